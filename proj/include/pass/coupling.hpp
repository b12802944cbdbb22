#pragma once

// Projected gradient ascent on the window-averaged efficiency over the split
// coefficients, with the analytic gradient of the channel gains.

#include <vector>

#include "pass/config.hpp"
#include "pass/em_model.hpp"
#include "pass/types.hpp"

namespace pass {

/// One frame of the window with its (fixed) layout and powers.
struct CouplingSample {
  UserFrame frame;
  Layout layout;
  Vector power;
  double sum_power = 0.0;  // P_i^sum, the frame's denominator
};

/// E(delta) = (1/m) sum_i (1/P_i^sum) sum_k log(1 + Gamma_k P_{k,i} G_{k,i}(x_i, delta)).
struct CouplingObjective {
  std::vector<CouplingSample> samples;
  SystemConfig config;

  void validate() const;
};

/// eta_{k,n} = exp(-j(alpha D_k(x_n) + beta x_n)) / D_k(x_n), K x N.
CMatrix eta_coefficients(const CouplingSample& sample, const SystemConfig& cfg);

/// dG_k / d delta_n as a K x N matrix, G_k = |sum_r eta_{k,r} A_r|^2.
Matrix gain_gradient(const CouplingSample& sample, const SplitVector& delta,
                     const SystemConfig& cfg);

double coupling_value(const CouplingObjective& objective, const SplitVector& delta);

Vector ee_gradient(const CouplingObjective& objective, const SplitVector& delta);

/// Caches eta per sample so repeated evaluations skip the trigonometry.
class CouplingEvaluator {
public:
  explicit CouplingEvaluator(const CouplingObjective& objective);

  double value(const Vector& delta) const;
  Vector gradient(const Vector& delta) const;

private:
  struct Term {
    CMatrix eta;
    Vector snr;  // Gamma_k P_k
    double weight;
  };
  std::vector<Term> terms_;
  double scale_;
};

struct GradientStepReport {
  double objective_before = 0.0;
  double objective_after = 0.0;
  double step_size_used = 0.0;
  std::vector<Index> clamped_indices;
};

struct CouplingResult {
  SplitVector delta;
  double objective_initial = 0.0;
  double objective_final = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<GradientStepReport> steps;
};

/// delta <- clamp(delta + mu grad, 0, 1) until the relative change drops
/// below outer_tolerance. With backtracking the step starts at
/// min(mu, 1 / max|grad|) and is halved (up to max_halvings times) until the
/// objective does not decrease; without it the best iterate seen is returned.
CouplingResult tune_coupling_report(const CouplingObjective& objective,
                                    const SplitVector& delta_init);

SplitVector tune_coupling(const CouplingObjective& objective, const SplitVector& delta_init);

}  // namespace pass
