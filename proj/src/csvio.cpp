#include "hrl/csvio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hrl/util.hpp"

namespace hrl {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out;
  out.reserve(field.size() + 2);
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns)
    : columns_(std::move(columns)) {
  if (columns_.empty())
    throw DomainError("csv: a table needs at least one column");
  for (const auto& c : columns_)
    if (c.empty()) throw DomainError("csv: empty column name");
}

void CsvTable::set_provenance(std::uint64_t seed,
                              const std::string& config_hash) {
  if (config_hash.size() != 16 ||
      config_hash.find_first_not_of("0123456789abcdef") != std::string::npos)
    throw DomainError("csv: config hash must be 16 lowercase hex digits");
  seed_ = seed;
  config_hash_ = config_hash;
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size())
    throw DomainError("csv: row has " + std::to_string(cells.size()) +
                      " cells, header has " +
                      std::to_string(columns_.size()));
  rows_.push_back(std::move(cells));
}

void CsvTable::write(std::ostream& out) const {
  out << "#schema_version=" << schema_version << ",seed=" << seed_
      << ",config-hash=" << config_hash_ << "\n";
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (j) out << ',';
    out << csv_quote(columns_[j]);
  }
  out << "\n";
  for (const auto& row : rows_) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << csv_quote(row[j]);
    }
    out << "\n";
  }
}

std::string CsvTable::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

void CsvTable::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("csv: cannot open '" + path + "' for writing");
  write(out);
  out.flush();
  if (!out) throw DomainError("csv: write to '" + path + "' failed");
}

}  // namespace hrl
