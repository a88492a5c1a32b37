#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace wgcalc::cli {

struct CheckResult {
  std::string suite;
  std::string check;
  long long cases = 0;
  long long failures = 0;
  std::vector<std::string> counterexamples;  // reproducible invocations, capped
  std::vector<std::string> notes;            // informational, never a failure
};

// mobius, equivalence, sign, oracle, epsilon, binomial
const std::vector<std::string>& suite_names();

// Throws Error{InvalidArgument} for an unknown suite; "all" runs every suite.
std::vector<CheckResult> run_suite(const std::string& name, const Config& cfg);

}  // namespace wgcalc::cli
