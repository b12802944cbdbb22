#pragma once

// Gauss-Seidel grid search over element locations, for a single frame
// (dynamic placement) or the sample-averaged efficiency of a window (static
// placement).

#include <vector>

#include "pass/config.hpp"
#include "pass/em_model.hpp"
#include "pass/types.hpp"

namespace pass {

enum class PlacementMode { dynamic, static_window };

/// The location subproblem with powers and split coefficients held fixed.
///
/// Dynamic mode carries one frame and maximizes sum_k log(1 + Gamma_k P_k G_k).
/// Static mode carries m frames and maximizes
///   (1/m) sum_i (1/P_i^sum) sum_k log(1 + Gamma_k P_{k,i} G_{k,i}),
/// where `sum_power[i]` holds P_i^sum.
struct PlacementObjective {
  PlacementMode mode = PlacementMode::dynamic;
  std::vector<UserFrame> frames;
  std::vector<Vector> powers;
  std::vector<double> sum_power;
  SplitVector delta;
  SystemConfig config;

  static PlacementObjective dynamic(UserFrame frame, Vector power, SplitVector delta,
                                    const SystemConfig& cfg);
  /// P_i^sum defaults to K P_cir + sum_k P_{k,i}.
  static PlacementObjective static_window(std::vector<UserFrame> frames,
                                          std::vector<Vector> powers, SplitVector delta,
                                          const SystemConfig& cfg);

  /// Weight of frame i in the objective.
  double weight(std::size_t i) const;
  void validate() const;
};

struct GridSpec {
  Vector points;

  /// Q equally spaced points on [0, length], endpoints included.
  static GridSpec uniform(double length, int q);
};

/// tau_{k,r,i} = sum_{n != r} A_n eta_{k,n,i}; one K-vector per frame.
std::vector<CVector> leave_one_out_sum(const PlacementObjective& objective, const Layout& layout,
                                       Index r);

/// F_r(x): the objective with element r moved to x and every other element,
/// including its split coefficient, left in place.
double scalar_objective(const PlacementObjective& objective, const Layout& layout, Index r,
                        double x);

/// Objective value of a complete layout.
double placement_value(const PlacementObjective& objective, const Layout& layout);

struct PlacementSweep {
  Layout layout;
  /// Objective before the sweep, then after each element update.
  std::vector<double> step_values;
};

/// One Gauss-Seidel sweep r = 1..N.
///
/// Element r may land on any grid point at least min_spacing away from every
/// other element, or stay where it is. Split coefficients follow physical
/// order along the waveguide, so a candidate that jumps past a neighbour is
/// scored with the coefficients it will carry after the final sort; between
/// its neighbours this is exactly F_r(x). Ties go to the lowest x.
PlacementSweep sweep_locations(const PlacementObjective& objective, const Layout& layout_init,
                               const GridSpec& grid);

Layout tune_locations(const PlacementObjective& objective, const Layout& layout_init,
                      const GridSpec& grid);

}  // namespace pass
