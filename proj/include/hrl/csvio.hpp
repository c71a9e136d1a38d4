#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hrl {

// RFC 4180 quoting: wraps the field when it holds a comma, quote, or line
// break, doubling interior quotes; everything else passes through as is.
std::string csv_quote(const std::string& field);

// %.12g rendering with explicit inf/-inf/nan spellings. Every number in a
// table funnels through here so reruns are byte identical.
std::string csv_number(double v);

// One table, one provenance comment. write() emits
//   #schema_version=1,seed=<n>,config-hash=<16 hex>
//   <header row>
//   <rows in insertion order>
// with "\n" line ends; callers add rows in their deterministic order.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void set_provenance(std::uint64_t seed, const std::string& config_hash);
  void add_row(std::vector<std::string> cells);  // size must match header

  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& column_names() const { return columns_; }

  void write(std::ostream& out) const;
  std::string str() const;
  void write_file(const std::string& path) const;

  static constexpr int schema_version = 1;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
  std::uint64_t seed_ = 0;
  std::string config_hash_ = "0000000000000000";
};

}  // namespace hrl
