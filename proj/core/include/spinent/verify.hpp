#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spinent {

struct CheckResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  double worst_residual = 0.0;
  double tolerance = 0.0;

  bool passed() const noexcept { return trials > 0 && failures == 0; }
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;

  bool passed() const noexcept;
  /// One-line JSON object.
  std::string to_json() const;
};

/// wootters, mixture, convexity, z2, u1, ising, conditions.
const std::vector<std::string>& suite_names();

/// Runs one suite with randomized instances drawn from `seed`. `trials` = 0
/// keeps the suite's default count (1000 per check). Throws InvalidArgument
/// for an unknown name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, int trials = 0);

/// Runs `name`, or every suite for "all".
std::vector<SuiteResult> run_verification(const std::string& name, std::uint64_t seed,
                                          int trials = 0);

}  // namespace spinent
