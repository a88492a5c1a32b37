#pragma once

#include <functional>
#include <string>

#include "report.hpp"
#include "wgcalc/moments.hpp"
#include "wgcalc/partitions.hpp"

namespace wgcalc::cli {

inline constexpr const char* kEnvPrefix = "WGCALC_";

struct Config {
  int bell_cap = kDefaultBellCap;
  int oracle_cap = kDefaultOracleCap;
  int symbolic_k_cap = kDefaultSymbolicCap;
  OutputFormat output = OutputFormat::Json;
};

// Keys: bell_cap, oracle_cap, symbolic_k_cap, output. Throws Error{Config}.
void set_config_key(Config& cfg, const std::string& key, const std::string& value, const std::string& origin);

// key = value lines; '#' starts a comment; blank lines ignored.
void apply_config_text(Config& cfg, const std::string& text, const std::string& origin);
void apply_config_file(Config& cfg, const std::string& path);

// WGCALC_BELL_CAP, WGCALC_ORACLE_CAP, WGCALC_SYMBOLIC_K_CAP, WGCALC_OUTPUT.
using EnvLookup = std::function<const char*(const char*)>;
void apply_environment(Config& cfg, const EnvLookup& lookup);

}  // namespace wgcalc::cli
