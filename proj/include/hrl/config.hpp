#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hrl/rational.hpp"

namespace hrl {

// Run-wide inputs shared by every subcommand. After parse_config the
// invariants hold: lambda bounds lie on the spectrum 2N0+dim, p and q are
// at least 1, grid_n is at least 16.
struct RunConfig {
  int dim = 1;
  long long lambda_min = 1;
  long long lambda_max = 1;
  int lambda_count = 5;
  Rat p{2};
  Rat q{2};
  std::optional<Rat> delta;  // unset: derived downstream from (dim, p)
  double c0 = 0.3;           // window separation gap for decay checks
  int grid_n = 256;
  std::uint64_t seed = 0;
  double tol_slope = 0.05;
  double tol_residual = 1e-8;
  std::string out_path = "out.csv";
};

// Keys accepted in key=value files and flag maps, in canonical order.
const std::vector<std::string>& config_keys();

struct ConfigResult {
  RunConfig config;
  std::vector<std::string> warnings;  // snapping and precedence notes
};

// Smallest eigenvalue 2k+dim with integer k >= 0 that is >= lambda.
long long snap_lambda_up(long long lambda, int dim);

// File entries apply first, then flags key by key; a flag that differs
// from the file value wins with a warning. Unknown keys raise DomainError
// naming the valid set, out-of-range values raise DomainError, and
// off-spectrum lambda bounds are snapped up with a warning, not rejected.
ConfigResult parse_config(
    const std::map<std::string, std::string>& file_entries,
    const std::map<std::string, std::string>& flags);

// Flat key=value lines; '#' comment lines and blank lines are ignored and
// a later duplicate key wins.
std::map<std::string, std::string> read_key_value_file(
    const std::string& path);

// read_key_value_file + parse_config; empty path means no file.
ConfigResult load_config(const std::string& path,
                         const std::map<std::string, std::string>& flags);

// 16 hex digits of FNV-1a over a canonical field serialization. Covers
// every field that affects emitted rows; out_path is excluded so the same
// experiment written to two locations hashes alike.
std::string config_digest(const RunConfig& config);

}  // namespace hrl
