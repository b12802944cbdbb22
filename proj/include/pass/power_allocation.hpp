#pragma once

// Per-user input power for a fixed channel: Dinkelbach iterations over a
// water-filling inner step.

#include <vector>

#include "pass/config.hpp"
#include "pass/types.hpp"

namespace pass {

struct AllocationProblem {
  Vector a;                    // a_k = Gamma_k G_k, 1/W
  double budget = 0.0;         // bound on sum_k P_k, W
  double circuit_power_total;  // K P_cir, W
  double tolerance = 1e-6;     // on |phi|
  LogBase log_base = LogBase::binary;

  void validate() const;
};

struct AllocationResult {
  Vector p;
  double lambda_star = 0.0;
  int iterations = 0;
  std::vector<double> trace;  // lambda after every accepted update
};

/// Builds the marginal allocation problem of one frame.
AllocationProblem make_allocation_problem(const Vector& gain, const Vector& gamma,
                                          const SystemConfig& cfg);

/// maximizes sum_k log(1 + a_k p_k) - lambda sum_k p_k subject to the budget.
/// The water level is lambda * ln 2 for binary rates (lambda for natural
/// ones) when that leaves the budget slack, otherwise the level that spends
/// the budget exactly.
Vector water_fill(const AllocationProblem& problem, double lambda);

/// Sum-rate over total consumed power for an allocation.
double allocation_ratio(const AllocationProblem& problem, const Vector& p);

/// Throws IterationLimit after kMaxDinkelbachIterations updates.
AllocationResult dinkelbach_allocate(const AllocationProblem& problem);

/// Water-filling with the budget spent in full (sum-rate optimal).
AllocationResult se_allocate(const AllocationProblem& problem);

inline constexpr int kMaxDinkelbachIterations = 1000;

}  // namespace pass
