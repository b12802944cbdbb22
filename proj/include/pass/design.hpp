#pragma once

// Two-tier block coordinate ascent. The inner tier updates per-frame
// variables (powers, and locations in the dynamic design); the outer tier
// updates window-level variables (split coefficients, and locations in the
// static design).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pass/config.hpp"
#include "pass/em_model.hpp"
#include "pass/scenario.hpp"

namespace pass {

enum class PlacementPolicy { dynamic, static_window, fixed_center };
enum class AllocationObjective { ee, se };

struct DesignMode {
  PlacementPolicy placement = PlacementPolicy::dynamic;
  std::optional<double> fixed_split;  // empty: split coefficients are tuned
  AllocationObjective allocation = AllocationObjective::ee;

  bool tunable() const { return !fixed_split.has_value(); }

  /// "<dynamic|static>-<tunable|fixed>-<ee|se>" or "fixed-antenna".
  std::string label() const;
  /// Inverse of label(); fixed modes use SystemConfig::fixed_split.
  static DesignMode parse(std::string_view label, double fixed_split = 0.5);
};

struct DesignOutcome {
  DesignMode mode;
  SplitVector delta_final;
  /// One layout per frame (dynamic) or a single shared layout.
  std::vector<Layout> layouts;
  std::vector<Vector> allocations;
  double windowed_ee = 0.0;
  double windowed_se = 0.0;
  /// Design objective (windowed EE, or windowed SE for se modes) at the
  /// initial point and after every outer iteration.
  std::vector<double> trace;
  std::vector<double> trace_ee;
  std::vector<double> trace_se;
  int outer_iterations = 0;
  bool converged = false;

  const Layout& layout(std::size_t frame) const {
    return layouts.size() == 1 ? layouts.front() : layouts.at(frame);
  }
};

DesignOutcome solve_dynamic(const Scenario& scenario, const DesignMode& mode,
                            const SystemConfig& cfg);
DesignOutcome solve_static(const Scenario& scenario, const DesignMode& mode,
                           const SystemConfig& cfg);
/// One always-on antenna at D_x / 2 radiating the full input power; only the
/// powers are optimized.
DesignOutcome solve_baseline_fixed_antenna(const Scenario& scenario, const SystemConfig& cfg,
                                           AllocationObjective allocation = AllocationObjective::ee);

/// Dispatches on mode.placement.
DesignOutcome solve(const Scenario& scenario, const DesignMode& mode, const SystemConfig& cfg);

/// Mean over frames of the per-frame EE, recomputed from the stored variables.
double replay_windowed_ee(const Scenario& scenario, const DesignOutcome& outcome,
                          const SystemConfig& cfg);
double replay_windowed_se(const Scenario& scenario, const DesignOutcome& outcome,
                          const SystemConfig& cfg);

}  // namespace pass
