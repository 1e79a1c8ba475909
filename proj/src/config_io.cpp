#include "cotunnel/config_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cotunnel/errors.hpp"

namespace cotunnel {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, std::string_view token) {
  const std::string text(token);
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty() || errno == ERANGE ||
      !std::isfinite(value)) {
    throw ConfigError("key '" + key + "' has a non-finite or unparseable value '" + text + "'");
  }
  return value;
}

std::uint64_t parse_seed(std::string_view token) {
  const std::string text(token);
  char* end = nullptr;
  errno = 0;
  const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || text.empty() || errno == ERANGE) {
    throw ConfigError("key 'seed' must be a non-negative integer, got '" + text + "'");
  }
  return value;
}

}  // namespace

ParsedConfig parse_config_text(std::string_view text) {
  ParsedConfig parsed;
  std::map<std::string, double*> keys = {
      {"E_L", &parsed.energy.E_L},       {"Delta_L", &parsed.energy.Delta_L},
      {"Delta_R", &parsed.energy.Delta_R}, {"U", &parsed.energy.U},
      {"eps_d", &parsed.energy.eps_d},   {"V_L", &parsed.energy.V_L},
      {"V_R1", &parsed.energy.V_R1},     {"V_R2", &parsed.energy.V_R2},
      {"degeneracy_tol", &parsed.energy.degeneracy_tol}};
  std::set<std::string> seen;

  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_number;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_number) + ": expected key=value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw ConfigError("duplicate key '" + key + "'");
    }
    if (key == "seed") {
      parsed.seed = parse_seed(value);
      continue;
    }
    const auto it = keys.find(key);
    if (it == keys.end()) throw ConfigError("unknown key '" + key + "'");
    *it->second = parse_double(key, value);
  }

  for (const char* required : {"E_L", "Delta_L", "Delta_R", "U"}) {
    if (!seen.count(required)) {
      throw ConfigError(std::string("missing required key '") + required + "'");
    }
  }
  require_valid(parsed.energy);
  return parsed;
}

ParsedConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config_text(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string format_g9(double value) {
  if (value == 0.0) return "0";  // canonicalize -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

}  // namespace cotunnel
