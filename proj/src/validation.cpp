#include "pass/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "pass/coupling.hpp"
#include "pass/em_model.hpp"
#include "pass/placement.hpp"
#include "pass/power_allocation.hpp"
#include "pass/scenario.hpp"

namespace pass {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Vector random_split(std::mt19937_64& gen, Index n, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector d(n);
  for (Index i = 0; i < n; ++i) d(i) = u(gen);
  return d;
}

CheckResult check_power_conservation(std::mt19937_64& gen) {
  double worst = 0.0;
  for (int t = 0; t < 2000; ++t) {
    const Vector d = random_split(gen, 1 + t % 20);
    worst = std::max(worst, std::abs(effective_splits(d).squaredNorm() +
                                     residual_power_fraction(d) - 1.0));
  }
  return {"power conservation", worst <= 1e-12, "max error " + sci(worst)};
}

CheckResult check_residual(int max_n) {
  bool ok = true;
  for (int n = 1; n <= max_n; ++n)
    ok = ok && residual_power_fraction(Vector::Constant(n, 0.5)) == std::ldexp(1.0, -2 * n);
  return {"symmetric residual power", ok, "delta = 0.5, N = 1.." + std::to_string(max_n)};
}

CheckResult check_reconstruction(const SystemConfig& cfg, const Scenario& scenario,
                                 std::mt19937_64& gen) {
  const Index n_el = std::min(cfg.num_elements, 6);
  const SplitVector delta(random_split(gen, n_el));
  const Layout layout = Layout::uniform(static_cast<int>(n_el), cfg.waveguide_length);
  const UserFrame& frame = scenario.frames.front();
  const PlacementObjective obj =
      PlacementObjective::dynamic(frame, Vector::Ones(frame.num_users()), delta, cfg);
  const CVector full = channel(frame, layout, delta, cfg).h / cfg.xi();
  const Vector amp = delta.effective();
  double worst = 0.0;
  for (Index r = 0; r < n_el; ++r) {
    const CVector tau = leave_one_out_sum(obj, layout, r).front();
    for (Index k = 0; k < frame.num_users(); ++k) {
      const Complex own = amp(r) * element_response(frame.user(k), layout[r], cfg);
      worst = std::max(worst, std::abs(tau(k) + own - full(k)) / std::abs(full(k)));
    }
  }
  return {"leave-one-out reconstruction", worst <= 1e-12, "max relative error " + sci(worst)};
}

CheckResult check_water_filling(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  bool ok = true;
  for (int t = 0; t < 500 && ok; ++t) {
    AllocationProblem problem;
    problem.a = Vector(1 + t % 6);
    for (Index k = 0; k < problem.a.size(); ++k) problem.a(k) = std::pow(10.0, 4.0 * u(gen) - 2.0);
    problem.budget = 0.1 + 10.0 * u(gen);
    problem.circuit_power_total = 0.01 + u(gen);
    const double lambda = 2.0 * u(gen);
    const Vector p = water_fill(problem, lambda);
    const double level = 1.0 / (lambda * std::numbers::ln2);
    const bool tight = std::abs(p.sum() - problem.budget) <= 1e-9 * std::max(1.0, problem.budget);
    bool slack_ok = true;
    for (Index k = 0; k < p.size(); ++k)
      slack_ok = slack_ok && std::abs(p(k) - std::max(0.0, level - 1.0 / problem.a(k))) <= 1e-9 * level;
    ok = (p.array() >= 0.0).all() && p.sum() <= problem.budget + 1e-9 && (tight || slack_ok);

    const AllocationResult res = dinkelbach_allocate(problem);
    for (std::size_t i = 1; i < res.trace.size(); ++i) ok = ok && res.trace[i] >= res.trace[i - 1];
    const Vector q = water_fill(problem, res.lambda_star);
    double rates = 0.0;
    for (Index k = 0; k < q.size(); ++k) rates += std::log2(1.0 + problem.a(k) * q(k));
    const double phi = rates - res.lambda_star * (problem.circuit_power_total + q.sum());
    ok = ok && std::abs(phi) <= 10.0 * problem.tolerance;
  }
  return {"water-filling and Dinkelbach optimality", ok, "500 random problems"};
}

CheckResult check_gradient(const SystemConfig& cfg, const Scenario& scenario,
                           std::mt19937_64& gen) {
  const int n_el = std::min(cfg.num_elements, 6);
  CouplingObjective objective;
  objective.config = cfg;
  const std::size_t m = std::min<std::size_t>(scenario.frames.size(), 3);
  for (std::size_t i = 0; i < m; ++i) {
    const UserFrame& f = scenario.frames[i];
    const Vector p = Vector::Constant(f.num_users(), cfg.power_budget_per_slot);
    objective.samples.push_back({f, Layout::uniform(n_el, cfg.waveguide_length), p,
                                 p.sum() + f.num_users() * cfg.circuit_power});
  }
  const CouplingEvaluator model(objective);
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    const Vector d = random_split(gen, n_el, 0.05, 0.95);
    const Vector g = model.gradient(d);
    Vector fd(n_el);
    for (int i = 0; i < n_el; ++i) {
      Vector up = d, down = d;
      up(i) += 1e-6;
      down(i) -= 1e-6;
      fd(i) = (model.value(up) - model.value(down)) / 2e-6;
    }
    worst = std::max(worst, (g - fd).cwiseAbs().maxCoeff() / std::max(fd.cwiseAbs().maxCoeff(), 1e-300));
  }
  return {"coupling gradient vs finite differences", worst <= 1e-4, "max relative error " + sci(worst)};
}

CheckResult check_scenario_determinism(const SystemConfig& cfg) {
  SystemConfig small = cfg;
  small.samples_per_window = std::min(cfg.samples_per_window, 5);
  const Scenario a = generate_scenario(small);
  const Scenario b = generate_scenario(small);
  bool ok = a.frames.size() == b.frames.size();
  for (std::size_t i = 0; ok && i < a.frames.size(); ++i)
    ok = a.frames[i].positions == b.frames[i].positions;
  return {"scenario determinism", ok, "seed " + std::to_string(cfg.rng_seed)};
}

CheckResult check_placement(const SystemConfig& cfg, const Scenario& scenario) {
  SystemConfig small = cfg;
  small.grid_points = std::min(cfg.grid_points, 500);
  const GridSpec grid = GridSpec::uniform(small.waveguide_length, small.grid_points);
  const UserFrame& frame = scenario.frames.front();
  const PlacementObjective obj = PlacementObjective::dynamic(
      frame, Vector::Constant(frame.num_users(), small.power_budget_per_slot),
      SplitVector::constant(small.num_elements, 0.5), small);
  const PlacementSweep sweep =
      sweep_locations(obj, Layout::uniform(small.num_elements, small.waveguide_length), grid);
  bool ok = is_feasible(sweep.layout, small);
  for (std::size_t i = 1; i < sweep.step_values.size(); ++i)
    ok = ok && sweep.step_values[i] >= sweep.step_values[i - 1];
  const double replay = placement_value(obj, sweep.layout);
  ok = ok && std::abs(replay - sweep.step_values.back()) <= 1e-12 * std::abs(replay);
  return {"placement sweep feasibility and ascent", ok,
          "final objective " + sci(sweep.step_values.back())};
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const SystemConfig& cfg) {
  cfg.validate();
  std::mt19937_64 gen(cfg.rng_seed);
  SystemConfig small = cfg;
  small.samples_per_window = std::min(cfg.samples_per_window, 3);
  const Scenario scenario = generate_scenario(small);
  return {
      check_power_conservation(gen),
      check_residual(20),
      check_reconstruction(cfg, scenario, gen),
      check_water_filling(gen),
      check_gradient(cfg, scenario, gen),
      check_scenario_determinism(cfg),
      check_placement(cfg, scenario),
  };
}

}  // namespace pass
