#include "pass/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <spdlog/spdlog.h>

namespace pass {

void CouplingObjective::validate() const {
  if (samples.empty()) throw std::invalid_argument("coupling objective needs at least one sample");
  const Index n_el = samples.front().layout.size();
  for (const CouplingSample& s : samples) {
    if (s.layout.size() != n_el)
      throw std::invalid_argument("coupling samples must share the element count");
    if (s.power.size() != s.frame.num_users() || s.frame.gamma.size() != s.power.size())
      throw std::invalid_argument("coupling sample: inconsistent user count");
    if (!(s.sum_power > 0.0)) throw std::invalid_argument("P_i^sum must be > 0");
  }
}

CMatrix eta_coefficients(const CouplingSample& sample, const SystemConfig& cfg) {
  return response_matrix(sample.frame, sample.layout.positions(), cfg);
}

namespace {

Matrix gain_gradient_from(const CMatrix& eta, const Vector& delta) {
  const CVector combined = eta * effective_splits(delta).cast<Complex>();
  const CMatrix d_combined = eta * split_jacobian(delta).cast<Complex>();
  Matrix grad(eta.rows(), eta.cols());
  for (Index k = 0; k < eta.rows(); ++k)
    grad.row(k) = 2.0 * (std::conj(combined(k)) * d_combined.row(k)).real();
  return grad;
}

}  // namespace

Matrix gain_gradient(const CouplingSample& sample, const SplitVector& delta,
                     const SystemConfig& cfg) {
  if (sample.layout.size() != delta.size())
    throw std::invalid_argument("layout and split vector sizes differ");
  return gain_gradient_from(eta_coefficients(sample, cfg), delta.values());
}

CouplingEvaluator::CouplingEvaluator(const CouplingObjective& objective)
    : scale_(log_scale(objective.config.log_base)) {
  objective.validate();
  const double m = static_cast<double>(objective.samples.size());
  for (const CouplingSample& s : objective.samples)
    terms_.push_back({eta_coefficients(s, objective.config), s.frame.gamma.cwiseProduct(s.power),
                      1.0 / (m * s.sum_power)});
}

double CouplingEvaluator::value(const Vector& delta) const {
  const CVector amp = effective_splits(delta).cast<Complex>();
  double total = 0.0;
  for (const Term& t : terms_) {
    const Vector gain = (t.eta * amp).cwiseAbs2();
    double rates = 0.0;
    for (Index k = 0; k < gain.size(); ++k) rates += std::log1p(t.snr(k) * gain(k));
    total += t.weight * rates;
  }
  return total * scale_;
}

Vector CouplingEvaluator::gradient(const Vector& delta) const {
  const CVector amp = effective_splits(delta).cast<Complex>();
  const CMatrix jac = split_jacobian(delta).cast<Complex>();
  Vector grad = Vector::Zero(delta.size());
  for (const Term& t : terms_) {
    const CVector combined = t.eta * amp;
    const CMatrix d_combined = t.eta * jac;
    for (Index k = 0; k < combined.size(); ++k) {
      const double gain = std::norm(combined(k));
      const double factor = t.weight * t.snr(k) / (1.0 + t.snr(k) * gain);
      grad += factor * 2.0 * (std::conj(combined(k)) * d_combined.row(k)).real().transpose();
    }
  }
  return grad * scale_;
}

double coupling_value(const CouplingObjective& objective, const SplitVector& delta) {
  return CouplingEvaluator(objective).value(delta.values());
}

Vector ee_gradient(const CouplingObjective& objective, const SplitVector& delta) {
  return CouplingEvaluator(objective).gradient(delta.values());
}

namespace {

Vector project(const Vector& raw, std::vector<Index>* clamped) {
  Vector out = raw;
  for (Index n = 0; n < out.size(); ++n) {
    if (out(n) > 1.0 || out(n) < 0.0) {
      out(n) = std::clamp(out(n), 0.0, 1.0);
      if (clamped) clamped->push_back(n);
    }
  }
  return out;
}

double relative_change(double before, double after) {
  const double denom = std::max(std::abs(before), std::numeric_limits<double>::min());
  return std::abs(after - before) / denom;
}

}  // namespace

CouplingResult tune_coupling_report(const CouplingObjective& objective,
                                    const SplitVector& delta_init) {
  const SystemConfig& cfg = objective.config;
  const CouplingEvaluator model(objective);

  Vector delta = delta_init.values();
  double value = model.value(delta);

  CouplingResult result;
  result.objective_initial = value;
  Vector best = delta;
  double best_value = value;

  for (int it = 0; it < cfg.max_coupling_iterations; ++it) {
    const Vector grad = model.gradient(delta);
    GradientStepReport report;
    report.objective_before = value;

    bool accepted = false;
    // No trial step moves a coordinate further than the width of the box;
    // otherwise a near-singular derivative at delta_n = 1 pins every trial
    // to the far corner.
    const double widest = grad.cwiseAbs().maxCoeff();
    double step = cfg.backtracking && widest > 0.0 ? std::min(cfg.gradient_step, 1.0 / widest)
                                                   : cfg.gradient_step;
    Vector candidate;
    double candidate_value = value;
    const int attempts = cfg.backtracking ? cfg.max_halvings + 1 : 1;
    for (int h = 0; h < attempts; ++h, step *= 0.5) {
      std::vector<Index> clamped;
      candidate = project(delta + step * grad, &clamped);
      if (candidate == delta) break;
      candidate_value = model.value(candidate);
      if (!cfg.backtracking || candidate_value >= value) {
        accepted = true;
        report.step_size_used = step;
        report.clamped_indices = std::move(clamped);
        break;
      }
    }
    if (!accepted) {
      result.converged = true;
      break;
    }

    report.objective_after = candidate_value;
    result.steps.push_back(std::move(report));
    result.iterations = it + 1;

    const double change = relative_change(value, candidate_value);
    delta = std::move(candidate);
    value = candidate_value;
    if (value > best_value) {
      best = delta;
      best_value = value;
    }
    if (change < cfg.outer_tolerance) {
      result.converged = true;
      break;
    }
  }
  if (!result.converged)
    spdlog::warn("coupling tuning stopped at the iteration cap ({})", cfg.max_coupling_iterations);

  result.delta = SplitVector(std::move(best));
  result.objective_final = best_value;
  return result;
}

SplitVector tune_coupling(const CouplingObjective& objective, const SplitVector& delta_init) {
  return tune_coupling_report(objective, delta_init).delta;
}

}  // namespace pass
