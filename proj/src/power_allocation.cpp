#include "pass/power_allocation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "pass/em_model.hpp"
#include "pass/error.hpp"

namespace pass {

void AllocationProblem::validate() const {
  if (!(budget > 0.0)) throw std::invalid_argument("allocation budget must be > 0");
  if (!(circuit_power_total > 0.0))
    throw std::invalid_argument("allocation circuit power must be > 0");
  if (!(tolerance > 0.0)) throw std::invalid_argument("allocation tolerance must be > 0");
  for (Index k = 0; k < a.size(); ++k)
    if (!(a(k) >= 0.0) || !std::isfinite(a(k)))
      throw std::invalid_argument("SNR slopes must be finite and >= 0");
}

AllocationProblem make_allocation_problem(const Vector& gain, const Vector& gamma,
                                          const SystemConfig& cfg) {
  AllocationProblem problem;
  problem.a = gamma.cwiseProduct(gain);
  problem.budget = cfg.total_budget();
  problem.circuit_power_total = cfg.total_circuit_power();
  problem.tolerance = cfg.dinkelbach_tolerance;
  problem.log_base = cfg.log_base;
  return problem;
}

namespace {

Vector fill_to_level(const Vector& a, double water) {
  Vector p = Vector::Zero(a.size());
  for (Index k = 0; k < a.size(); ++k)
    if (a(k) > 0.0) p(k) = std::max(0.0, water - 1.0 / a(k));
  return p;
}

/// Water height 1/l that spends `budget` exactly.
double tight_water(const Vector& a, double budget) {
  std::vector<double> inverse;
  for (Index k = 0; k < a.size(); ++k)
    if (a(k) > 0.0) inverse.push_back(1.0 / a(k));
  std::sort(inverse.begin(), inverse.end());

  std::vector<double> prefix(inverse.size() + 1, 0.0);
  std::partial_sum(inverse.begin(), inverse.end(), prefix.begin() + 1);

  // Shrink the active set until the weakest active user is above water.
  std::size_t active = inverse.size();
  double water = (budget + prefix[active]) / static_cast<double>(active);
  while (active > 1 && water <= inverse[active - 1]) {
    --active;
    water = (budget + prefix[active]) / static_cast<double>(active);
  }
  return water;
}

}  // namespace

Vector water_fill(const AllocationProblem& problem, double lambda) {
  problem.validate();
  if (!(lambda >= 0.0)) throw std::invalid_argument("water_fill requires lambda >= 0");
  if (!(problem.a.array() > 0.0).any()) return Vector::Zero(problem.a.size());

  const double level =
      problem.log_base == LogBase::binary ? lambda * std::numbers::ln2 : lambda;
  if (level > 0.0) {
    Vector p = fill_to_level(problem.a, 1.0 / level);
    if (p.sum() <= problem.budget) return p;
  }
  return fill_to_level(problem.a, tight_water(problem.a, problem.budget));
}

double allocation_ratio(const AllocationProblem& problem, const Vector& p) {
  double rates = 0.0;
  for (Index k = 0; k < p.size(); ++k) rates += std::log1p(problem.a(k) * p(k));
  return rates * log_scale(problem.log_base) / (problem.circuit_power_total + p.sum());
}

AllocationResult dinkelbach_allocate(const AllocationProblem& problem) {
  problem.validate();
  AllocationResult result;
  result.p = Vector::Zero(problem.a.size());
  result.trace.push_back(0.0);
  if (!(problem.a.array() > 0.0).any()) return result;

  const double scale = log_scale(problem.log_base);
  double lambda = 0.0;
  for (int it = 1; it <= kMaxDinkelbachIterations; ++it) {
    const Vector p = water_fill(problem, lambda);
    double rates = 0.0;
    for (Index k = 0; k < p.size(); ++k) rates += std::log1p(problem.a(k) * p(k));
    rates *= scale;
    const double power = problem.circuit_power_total + p.sum();
    const double phi = rates - lambda * power;
    const double ratio = rates / power;

    result.iterations = it;
    // phi >= 0 in exact arithmetic; a rounding-level negative value means
    // the incumbent is already optimal, so keep it.
    if (ratio >= lambda) {
      lambda = ratio;
      result.p = p;
      result.trace.push_back(lambda);
    }
    if (std::abs(phi) <= problem.tolerance) {
      result.lambda_star = lambda;
      return result;
    }
  }
  throw IterationLimit("Dinkelbach iteration did not converge within " +
                       std::to_string(kMaxDinkelbachIterations) + " updates");
}

AllocationResult se_allocate(const AllocationProblem& problem) {
  AllocationResult result;
  result.p = water_fill(problem, 0.0);
  result.lambda_star = allocation_ratio(problem, result.p);
  result.iterations = 1;
  result.trace.push_back(result.lambda_star);
  return result;
}

}  // namespace pass
