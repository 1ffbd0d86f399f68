#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spbvp::cli {

/// Fault injected into a suite to show that it can fail.
enum class Sabotage {
  none,
  delta_d_naive,  // delta_d computed as the difference d - a
};

Sabotage parse_sabotage(const std::string& name);

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckOptions {
  int trials = 1000;
  std::uint64_t seed = 20150601;
  Sabotage sabotage = Sabotage::none;
};

SuiteResult check_mesh_invariants();
SuiteResult check_coefficient_identities(Sabotage sabotage = Sabotage::none);
SuiteResult check_stability(int trials, std::uint64_t seed);
SuiteResult check_fitted_exactness();
SuiteResult check_jacobian(std::uint64_t seed);

std::vector<SuiteResult> run_all_checks(const CheckOptions& opts);

}  // namespace spbvp::cli
