#include "config.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "wgcalc/error.hpp"

namespace wgcalc::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_cap(const std::string& key, const std::string& value, const std::string& origin) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || v < 1 || v > 1000000) {
    throw Error(ErrorKind::Config, origin + ": " + key + " must be a positive integer, got '" + value + "'");
  }
  return static_cast<int>(v);
}

}  // namespace

void set_config_key(Config& cfg, const std::string& key, const std::string& value, const std::string& origin) {
  if (key == "bell_cap") {
    cfg.bell_cap = parse_cap(key, value, origin);
  } else if (key == "oracle_cap") {
    cfg.oracle_cap = parse_cap(key, value, origin);
  } else if (key == "symbolic_k_cap") {
    cfg.symbolic_k_cap = parse_cap(key, value, origin);
  } else if (key == "output") {
    try {
      cfg.output = parse_output_format(value);
    } catch (const Error& e) {
      throw Error(ErrorKind::Config, origin + ": " + e.what());
    }
  } else {
    throw Error(ErrorKind::Config, origin + ": unknown key '" + key + "'");
  }
}

void apply_config_text(Config& cfg, const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw Error(ErrorKind::Config, where + ": expected key = value");
    set_config_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), where);
  }
}

void apply_config_file(Config& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str(), path);
}

void apply_environment(Config& cfg, const EnvLookup& lookup) {
  static constexpr std::array<const char*, 4> keys = {"bell_cap", "oracle_cap", "symbolic_k_cap", "output"};
  for (const char* key : keys) {
    std::string var = kEnvPrefix;
    for (const char* p = key; *p; ++p) var += static_cast<char>(std::toupper(static_cast<unsigned char>(*p)));
    if (const char* value = lookup(var.c_str())) set_config_key(cfg, key, value, "$" + var);
  }
}

}  // namespace wgcalc::cli
