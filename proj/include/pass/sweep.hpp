#pragma once

// Experiment drivers behind the CLI: one solve per (sweep value, mode),
// checked and written as CSV.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pass/config.hpp"
#include "pass/design.hpp"
#include "pass/scenario.hpp"

namespace pass {

struct SweepRow {
  double sweep_var = 0.0;
  std::string mode;
  double ee = 0.0;
  double se = 0.0;
  int outer_iters = 0;
  double seconds = 0.0;
  bool converged = true;
};

struct SweepResult {
  std::vector<SweepRow> rows;

  bool all_converged() const;
  /// Orders rows by (sweep_var, mode).
  void sort();
};

inline constexpr std::string_view kCsvHeader = "sweep_var,mode,ee_bits_per_joule,se_bits_per_use,outer_iters,seconds";

/// Floats use 9 significant digits. Wall time is only written when
/// `with_timing` is set, so repeated runs produce identical files.
void write_csv(std::ostream& out, const SweepResult& result, bool with_timing = false);

/// Throws Error if an allocation exceeds the budget, a layout leaves the
/// feasible set, or the stored efficiency does not replay within 1e-9.
void verify_outcome(const Scenario& scenario, const DesignOutcome& outcome,
                    const SystemConfig& cfg);

std::vector<DesignMode> parse_modes(const std::vector<std::string>& labels, double fixed_split);

/// Every (placement, coupling, objective) combination plus the fixed antenna.
std::vector<DesignMode> all_modes(double fixed_split);

/// Sweep rows hold the configured P_0 in dBm.
SweepResult run_single(const SystemConfig& cfg, const std::vector<DesignMode>& modes, int workers);
/// One row per outer iteration (sweep_var = iteration, 0 = initial point);
/// mode labels carry the element count, e.g. "dynamic-tunable-ee/N10".
SweepResult run_convergence(const SystemConfig& cfg, const std::vector<int>& elements,
                            const std::vector<DesignMode>& modes, int workers);
SweepResult run_power_sweep(const SystemConfig& cfg, const std::vector<double>& power_dbm,
                            const std::vector<DesignMode>& modes, int workers);
SweepResult run_element_sweep(const SystemConfig& cfg, const std::vector<int>& elements,
                              const std::vector<DesignMode>& modes, int workers);
/// The waveguide length follows D_x.
SweepResult run_region_sweep(const SystemConfig& cfg, const std::vector<double>& widths,
                             const std::vector<DesignMode>& modes, int workers);

}  // namespace pass
