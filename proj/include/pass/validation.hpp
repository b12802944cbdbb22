#pragma once

#include <string>
#include <vector>

#include "pass/config.hpp"

namespace pass {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Randomized self-checks of the model and solver invariants, seeded from
/// cfg.rng_seed. Small enough to run in well under a second.
std::vector<CheckResult> run_invariant_suite(const SystemConfig& cfg);

}  // namespace pass
