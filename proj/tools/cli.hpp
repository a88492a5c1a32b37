#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "wgcalc/error.hpp"

namespace wgcalc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 70;

// 3..10, one per engine error kind.
int exit_code(ErrorKind kind);

// args excludes the program name. Environment overrides come from `env`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wgcalc::cli
