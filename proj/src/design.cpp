#include "pass/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "pass/coupling.hpp"
#include "pass/error.hpp"
#include "pass/parallel.hpp"
#include "pass/placement.hpp"
#include "pass/power_allocation.hpp"

namespace pass {

std::string DesignMode::label() const {
  if (placement == PlacementPolicy::fixed_center)
    return allocation == AllocationObjective::ee ? "fixed-antenna" : "fixed-antenna-se";
  std::string out = placement == PlacementPolicy::dynamic ? "dynamic" : "static";
  out += tunable() ? "-tunable" : "-fixed";
  out += allocation == AllocationObjective::ee ? "-ee" : "-se";
  return out;
}

DesignMode DesignMode::parse(std::string_view label, double fixed_split) {
  DesignMode mode;
  if (label == "fixed-antenna" || label == "fixed-antenna-se") {
    mode.placement = PlacementPolicy::fixed_center;
    mode.fixed_split = 0.0;
    mode.allocation = label == "fixed-antenna" ? AllocationObjective::ee : AllocationObjective::se;
    return mode;
  }
  const auto bad = [&] {
    return ConfigError("unknown design mode '" + std::string(label) +
                       "' (expected <dynamic|static>-<tunable|fixed>-<ee|se> or fixed-antenna)");
  };
  const auto first = label.find('-');
  const auto second = label.find('-', first == std::string_view::npos ? first : first + 1);
  if (first == std::string_view::npos || second == std::string_view::npos) throw bad();
  const std::string_view placement = label.substr(0, first);
  const std::string_view coupling = label.substr(first + 1, second - first - 1);
  const std::string_view objective = label.substr(second + 1);

  if (placement == "dynamic")
    mode.placement = PlacementPolicy::dynamic;
  else if (placement == "static")
    mode.placement = PlacementPolicy::static_window;
  else
    throw bad();

  if (coupling == "fixed")
    mode.fixed_split = fixed_split;
  else if (coupling != "tunable")
    throw bad();

  if (objective == "ee")
    mode.allocation = AllocationObjective::ee;
  else if (objective == "se")
    mode.allocation = AllocationObjective::se;
  else
    throw bad();
  return mode;
}

namespace {

double relative_change(double before, double after) {
  return std::abs(after - before) /
         std::max(std::abs(before), std::numeric_limits<double>::min());
}

double frame_objective(AllocationObjective objective, const Vector& p, const UserFrame& frame,
                       const Layout& layout, const SplitVector& delta, const SystemConfig& cfg) {
  return objective == AllocationObjective::ee
             ? energy_efficiency(p, frame, layout, delta, cfg)
             : spectral_efficiency(p, frame, layout, delta, cfg);
}

Vector allocate(AllocationObjective objective, const UserFrame& frame, const Layout& layout,
                const SplitVector& delta, const SystemConfig& cfg) {
  const Vector gain = channel(frame, layout, delta, cfg).gain;
  const AllocationProblem problem = make_allocation_problem(gain, frame.gamma, cfg);
  return objective == AllocationObjective::ee ? dinkelbach_allocate(problem).p
                                              : se_allocate(problem).p;
}

/// Denominator that turns the shared window objective into the design
/// objective: P_i^sum for EE, K for SE.
double normalizer(AllocationObjective objective, const Vector& p, const SystemConfig& cfg) {
  return objective == AllocationObjective::ee ? p.sum() + p.size() * cfg.circuit_power
                                              : static_cast<double>(p.size());
}

SplitVector initial_split(const DesignMode& mode, const SystemConfig& cfg) {
  return SplitVector::constant(cfg.num_elements, mode.fixed_split.value_or(cfg.initial_split));
}

/// Shared bookkeeping of the outer loop.
class WindowState {
public:
  WindowState(const Scenario& scenario, const DesignMode& mode, const SystemConfig& cfg)
      : scenario_(scenario), mode_(mode), cfg_(cfg) {}

  double objective(const std::vector<Layout>& layouts, const std::vector<Vector>& powers,
                   const SplitVector& delta) const {
    double total = 0.0;
    for (std::size_t i = 0; i < scenario_.frames.size(); ++i)
      total += frame_objective(mode_.allocation, powers[i], scenario_.frames[i],
                               layouts.size() == 1 ? layouts.front() : layouts[i], delta, cfg_);
    return total / static_cast<double>(scenario_.frames.size());
  }

  /// Coupling block; keeps the incumbent unless the tuned split is no worse.
  void tune_split(const std::vector<Layout>& layouts, const std::vector<Vector>& powers,
                  SplitVector& delta) const {
    CouplingObjective problem;
    problem.config = cfg_;
    for (std::size_t i = 0; i < scenario_.frames.size(); ++i)
      problem.samples.push_back({scenario_.frames[i],
                                   layouts.size() == 1 ? layouts.front() : layouts[i], powers[i],
                                   normalizer(mode_.allocation, powers[i], cfg_)});
    SplitVector tuned = tune_coupling(problem, delta);
    if (objective(layouts, powers, tuned) >= objective(layouts, powers, delta))
      delta = std::move(tuned);
  }

  void record(DesignOutcome& out, const std::vector<Layout>& layouts,
              const std::vector<Vector>& powers, const SplitVector& delta) const {
    out.layouts = layouts;
    out.allocations = powers;
    out.delta_final = delta;
    out.windowed_ee = replay_windowed_ee(scenario_, out, cfg_);
    out.windowed_se = replay_windowed_se(scenario_, out, cfg_);
    out.trace_ee.push_back(out.windowed_ee);
    out.trace_se.push_back(out.windowed_se);
    out.trace.push_back(mode_.allocation == AllocationObjective::ee ? out.windowed_ee
                                                                    : out.windowed_se);
  }

private:
  const Scenario& scenario_;
  const DesignMode& mode_;
  const SystemConfig& cfg_;
};

void check_scenario(const Scenario& scenario, const SystemConfig& cfg) {
  cfg.validate();
  if (scenario.frames.empty()) throw std::invalid_argument("scenario has no frames");
  for (const UserFrame& f : scenario.frames)
    if (f.num_users() != cfg.num_users)
      throw std::invalid_argument("scenario user count differs from the configuration");
}

std::vector<Vector> initial_powers(const Scenario& scenario, const SystemConfig& cfg) {
  return std::vector<Vector>(
      scenario.frames.size(),
      Vector::Constant(cfg.num_users, cfg.power_budget_per_slot / cfg.num_users));
}

bool finish_iteration(DesignOutcome& out, const SystemConfig& cfg) {
  out.outer_iterations += 1;
  const double before = out.trace[out.trace.size() - 2];
  return relative_change(before, out.trace.back()) < cfg.outer_tolerance;
}

}  // namespace

DesignOutcome solve_dynamic(const Scenario& scenario, const DesignMode& mode,
                            const SystemConfig& cfg) {
  if (mode.placement != PlacementPolicy::dynamic)
    throw std::invalid_argument("solve_dynamic requires dynamic placement");
  check_scenario(scenario, cfg);

  const GridSpec grid = GridSpec::uniform(cfg.waveguide_length, cfg.grid_points);
  const std::size_t m = scenario.frames.size();
  SplitVector delta = initial_split(mode, cfg);
  std::vector<Layout> layouts(m, Layout::uniform(cfg.num_elements, cfg.waveguide_length));
  std::vector<Vector> powers = initial_powers(scenario, cfg);

  const WindowState window(scenario, mode, cfg);
  DesignOutcome out;
  out.mode = mode;
  window.record(out, layouts, powers, delta);

  for (int outer = 0; outer < cfg.max_outer_iterations; ++outer) {
    parallel_for(m, cfg.workers, [&](std::size_t i) {
      const UserFrame& frame = scenario.frames[i];
      Layout& layout = layouts[i];
      Vector& power = powers[i];
      double value = frame_objective(mode.allocation, power, frame, layout, delta, cfg);
      for (int inner = 0; inner < cfg.max_inner_iterations; ++inner) {
        const double start = value;

        Vector p = allocate(mode.allocation, frame, layout, delta, cfg);
        double v = frame_objective(mode.allocation, p, frame, layout, delta, cfg);
        if (v >= value) {
          power = std::move(p);
          value = v;
        }

        Layout x = tune_locations(PlacementObjective::dynamic(frame, power, delta, cfg), layout,
                                  grid);
        v = frame_objective(mode.allocation, power, frame, x, delta, cfg);
        if (v >= value) {
          layout = std::move(x);
          value = v;
        }

        if (relative_change(start, value) < cfg.inner_tolerance) break;
      }
    });

    if (mode.tunable()) window.tune_split(layouts, powers, delta);

    window.record(out, layouts, powers, delta);
    if (finish_iteration(out, cfg)) {
      out.converged = true;
      break;
    }
  }
  if (!out.converged)
    spdlog::warn("{}: no convergence after {} outer iterations", mode.label(),
                 cfg.max_outer_iterations);
  return out;
}

DesignOutcome solve_static(const Scenario& scenario, const DesignMode& mode,
                           const SystemConfig& cfg) {
  if (mode.placement != PlacementPolicy::static_window)
    throw std::invalid_argument("solve_static requires static placement");
  check_scenario(scenario, cfg);

  const GridSpec grid = GridSpec::uniform(cfg.waveguide_length, cfg.grid_points);
  const std::size_t m = scenario.frames.size();
  SplitVector delta = initial_split(mode, cfg);
  std::vector<Layout> layouts{Layout::uniform(cfg.num_elements, cfg.waveguide_length)};
  std::vector<Vector> powers = initial_powers(scenario, cfg);

  const WindowState window(scenario, mode, cfg);
  DesignOutcome out;
  out.mode = mode;
  window.record(out, layouts, powers, delta);

  for (int outer = 0; outer < cfg.max_outer_iterations; ++outer) {
    parallel_for(m, cfg.workers, [&](std::size_t i) {
      const UserFrame& frame = scenario.frames[i];
      Vector p = allocate(mode.allocation, frame, layouts.front(), delta, cfg);
      if (frame_objective(mode.allocation, p, frame, layouts.front(), delta, cfg) >=
          frame_objective(mode.allocation, powers[i], frame, layouts.front(), delta, cfg))
        powers[i] = std::move(p);
    });

    PlacementObjective placement =
        PlacementObjective::static_window(scenario.frames, powers, delta, cfg);
    for (std::size_t i = 0; i < m; ++i)
      placement.sum_power[i] = normalizer(mode.allocation, powers[i], cfg);
    for (int sweep = 0; sweep < cfg.max_inner_iterations; ++sweep) {
      const double before = window.objective(layouts, powers, delta);
      std::vector<Layout> moved{tune_locations(placement, layouts.front(), grid)};
      const double after = window.objective(moved, powers, delta);
      if (after < before) break;
      layouts = std::move(moved);
      if (after - before <= cfg.inner_tolerance * std::abs(before)) break;
    }

    if (mode.tunable()) window.tune_split(layouts, powers, delta);

    window.record(out, layouts, powers, delta);
    if (finish_iteration(out, cfg)) {
      out.converged = true;
      break;
    }
  }
  if (!out.converged)
    spdlog::warn("{}: no convergence after {} outer iterations", mode.label(),
                 cfg.max_outer_iterations);
  return out;
}

DesignOutcome solve_baseline_fixed_antenna(const Scenario& scenario, const SystemConfig& cfg,
                                           AllocationObjective allocation) {
  SystemConfig single = cfg;
  single.num_elements = 1;
  check_scenario(scenario, single);

  DesignMode mode;
  mode.placement = PlacementPolicy::fixed_center;
  mode.fixed_split = 0.0;
  mode.allocation = allocation;

  const SplitVector delta = SplitVector::constant(1, 0.0);
  const std::vector<Layout> layouts{Layout(Vector::Constant(1, 0.5 * scenario.region_width))};
  std::vector<Vector> powers = initial_powers(scenario, single);

  const WindowState window(scenario, mode, single);
  DesignOutcome out;
  out.mode = mode;
  window.record(out, layouts, powers, delta);

  parallel_for(scenario.frames.size(), cfg.workers, [&](std::size_t i) {
    powers[i] = allocate(allocation, scenario.frames[i], layouts.front(), delta, single);
  });
  window.record(out, layouts, powers, delta);
  out.outer_iterations = 1;
  out.converged = true;
  return out;
}

DesignOutcome solve(const Scenario& scenario, const DesignMode& mode, const SystemConfig& cfg) {
  switch (mode.placement) {
    case PlacementPolicy::dynamic:
      return solve_dynamic(scenario, mode, cfg);
    case PlacementPolicy::static_window:
      return solve_static(scenario, mode, cfg);
    case PlacementPolicy::fixed_center:
      return solve_baseline_fixed_antenna(scenario, cfg, mode.allocation);
  }
  throw std::logic_error("unhandled placement policy");
}

double replay_windowed_ee(const Scenario& scenario, const DesignOutcome& outcome,
                          const SystemConfig& cfg) {
  double total = 0.0;
  for (std::size_t i = 0; i < scenario.frames.size(); ++i)
    total += energy_efficiency(outcome.allocations.at(i), scenario.frames[i], outcome.layout(i),
                               outcome.delta_final, cfg);
  return total / static_cast<double>(scenario.frames.size());
}

double replay_windowed_se(const Scenario& scenario, const DesignOutcome& outcome,
                          const SystemConfig& cfg) {
  double total = 0.0;
  for (std::size_t i = 0; i < scenario.frames.size(); ++i)
    total += spectral_efficiency(outcome.allocations.at(i), scenario.frames[i], outcome.layout(i),
                                 outcome.delta_final, cfg);
  return total / static_cast<double>(scenario.frames.size());
}

}  // namespace pass
