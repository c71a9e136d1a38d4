#include "hrl/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hrl/csvio.hpp"
#include "hrl/util.hpp"

namespace hrl {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

long long parse_ll(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != v.size())
    throw DomainError("config: " + key + " wants an integer, got '" + v + "'");
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long out = 0;
  try {
    out = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != v.size() || v.find('-') != std::string::npos)
    throw DomainError("config: " + key + " wants an unsigned integer, got '" +
                      v + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != v.size())
    throw DomainError("config: " + key + " wants a real number, got '" + v +
                      "'");
  return out;
}

Rat parse_rat_value(const std::string& key, const std::string& v) {
  try {
    return rat_parse(v);
  } catch (const DomainError&) {
    throw DomainError("config: " + key +
                      " wants a rational ('a', 'a/b', or 'inf'), got '" + v +
                      "'");
  }
}

void apply_entry(RunConfig& c, const std::string& key,
                 const std::string& value) {
  if (key == "dim")
    c.dim = static_cast<int>(parse_ll(key, value));
  else if (key == "lambda_min")
    c.lambda_min = parse_ll(key, value);
  else if (key == "lambda_max")
    c.lambda_max = parse_ll(key, value);
  else if (key == "lambda_count")
    c.lambda_count = static_cast<int>(parse_ll(key, value));
  else if (key == "p")
    c.p = parse_rat_value(key, value);
  else if (key == "q")
    c.q = parse_rat_value(key, value);
  else if (key == "delta")
    c.delta = value == "auto"
                  ? std::optional<Rat>{}
                  : std::optional<Rat>{parse_rat_value(key, value)};
  else if (key == "c0")
    c.c0 = parse_real(key, value);
  else if (key == "grid_n")
    c.grid_n = static_cast<int>(parse_ll(key, value));
  else if (key == "seed")
    c.seed = parse_u64(key, value);
  else if (key == "tol_slope")
    c.tol_slope = parse_real(key, value);
  else if (key == "tol_residual")
    c.tol_residual = parse_real(key, value);
  else if (key == "out_path")
    c.out_path = value;
}

void check_known(const std::map<std::string, std::string>& entries,
                 const char* source) {
  const auto& keys = config_keys();
  for (const auto& [k, v] : entries) {
    if (std::find(keys.begin(), keys.end(), k) != keys.end()) continue;
    std::string list;
    for (const auto& name : keys) {
      if (!list.empty()) list += ", ";
      list += name;
    }
    throw DomainError("config: unknown " + std::string(source) + " key '" + k +
                      "'; valid keys: " + list);
  }
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "dim",  "lambda_min", "lambda_max", "lambda_count", "p",
      "q",    "delta",      "c0",         "grid_n",       "seed",
      "tol_slope", "tol_residual", "out_path"};
  return keys;
}

long long snap_lambda_up(long long lambda, int dim) {
  if (dim < 1) throw DomainError("config: dim must be >= 1");
  if (lambda <= dim) return dim;
  return (lambda - dim) % 2 == 0 ? lambda : lambda + 1;
}

ConfigResult parse_config(
    const std::map<std::string, std::string>& file_entries,
    const std::map<std::string, std::string>& flags) {
  check_known(file_entries, "file");
  check_known(flags, "flag");

  ConfigResult out;
  for (const auto& [k, v] : file_entries) apply_entry(out.config, k, v);
  for (const auto& [k, v] : flags) {
    auto it = file_entries.find(k);
    if (it != file_entries.end() && it->second != v)
      out.warnings.push_back("flag " + k + "=" + v + " overrides file value " +
                             it->second);
    apply_entry(out.config, k, v);
  }

  RunConfig& c = out.config;
  if (c.dim < 1) throw DomainError("config: dim must be >= 1");
  if (c.lambda_count < 1)
    throw DomainError("config: lambda_count must be >= 1");
  if (c.grid_n < 16) throw DomainError("config: grid_n must be >= 16");
  if (c.p < Rat(1)) throw DomainError("config: p must be >= 1 or inf");
  if (c.q < Rat(1)) throw DomainError("config: q must be >= 1 or inf");
  if (c.delta && *c.delta < Rat(0))
    throw DomainError("config: delta must be >= 0 or inf");
  if (!(c.c0 >= 0))
    throw DomainError("config: c0 must be a nonnegative real");
  if (!(c.tol_slope > 0) || !(c.tol_residual > 0))
    throw DomainError("config: tolerances must be positive");

  long long snapped_min = snap_lambda_up(c.lambda_min, c.dim);
  if (snapped_min != c.lambda_min) {
    out.warnings.push_back("lambda_min " + std::to_string(c.lambda_min) +
                           " is off the spectrum for dim " +
                           std::to_string(c.dim) + "; snapped up to " +
                           std::to_string(snapped_min));
    c.lambda_min = snapped_min;
  }
  long long snapped_max = snap_lambda_up(c.lambda_max, c.dim);
  if (snapped_max != c.lambda_max) {
    out.warnings.push_back("lambda_max " + std::to_string(c.lambda_max) +
                           " is off the spectrum for dim " +
                           std::to_string(c.dim) + "; snapped up to " +
                           std::to_string(snapped_max));
    c.lambda_max = snapped_max;
  }
  if (c.lambda_min > c.lambda_max)
    throw DomainError("config: lambda_min exceeds lambda_max after snapping");
  return out;
}

std::map<std::string, std::string> read_key_value_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open '" + path + "'");
  std::map<std::string, std::string> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw DomainError("config: " + path + ":" + std::to_string(lineno) +
                        " is not a key=value line");
    std::string key = trim(t.substr(0, eq));
    if (key.empty())
      throw DomainError("config: " + path + ":" + std::to_string(lineno) +
                        " has an empty key");
    entries[key] = trim(t.substr(eq + 1));
  }
  return entries;
}

ConfigResult load_config(const std::string& path,
                         const std::map<std::string, std::string>& flags) {
  std::map<std::string, std::string> file_entries;
  if (!path.empty()) file_entries = read_key_value_file(path);
  return parse_config(file_entries, flags);
}

std::string config_digest(const RunConfig& config) {
  std::ostringstream os;
  os << "dim=" << config.dim << "\nlambda_min=" << config.lambda_min
     << "\nlambda_max=" << config.lambda_max
     << "\nlambda_count=" << config.lambda_count << "\np=" << config.p.str()
     << "\nq=" << config.q.str()
     << "\ndelta=" << (config.delta ? config.delta->str() : "auto")
     << "\nc0=" << csv_number(config.c0) << "\ngrid_n=" << config.grid_n
     << "\nseed=" << config.seed
     << "\ntol_slope=" << csv_number(config.tol_slope)
     << "\ntol_residual=" << csv_number(config.tol_residual) << "\n";
  std::uint64_t h = fnv1a64(os.str());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hrl
