#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qnls {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Suites: dual, nonlinearity, shooting, limits, branch, io, all.
/// Unknown names throw ConfigError.
std::vector<CheckResult> run_suite(const std::string& suite);

const std::vector<std::string>& suite_names();

/// One row per check, then a totals line. Returns true when all passed.
bool print_results(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace qnls
