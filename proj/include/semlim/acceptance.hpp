#pragma once

// Acceptance checks shared by the acceptance test binary and `semlim selftest`.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace semlim::acceptance {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Settings {
  std::uint64_t seed = 1;
  std::uint64_t n = 1'000'000;
  /// Sample count of the Cauchy ratio oracle for the arctan-integral bound.
  std::uint64_t cauchy_n = 10'000'000;
  unsigned workers = 0;
};

std::vector<CheckResult> run_all(const Settings& settings);

/// One "[PASS] name: detail" / "[FAIL] ..." line per check.
void print_report(std::ostream& out, const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace semlim::acceptance
