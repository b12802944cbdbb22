#include "pass/em_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pass/error.hpp"

namespace pass {

SplitVector::SplitVector(Vector delta) : delta_(std::move(delta)) {
  for (Index n = 0; n < delta_.size(); ++n) {
    const double d = delta_(n);
    if (!(d >= 0.0 && d <= 1.0))
      throw std::invalid_argument("split coefficient " + std::to_string(n) + " outside [0, 1]");
  }
}

SplitVector SplitVector::constant(Index n, double value) {
  return SplitVector(Vector::Constant(n, value));
}

Layout::Layout(Vector positions) : x_(std::move(positions)) {
  for (Index n = 1; n < x_.size(); ++n)
    if (!(x_(n) >= x_(n - 1))) throw std::invalid_argument("layout positions must be ascending");
}

Layout Layout::uniform(int num_elements, double length) {
  if (num_elements == 1) return Layout(Vector::Constant(1, 0.5 * length));
  Vector x(num_elements);
  for (int n = 0; n < num_elements; ++n) x(n) = n * length / (num_elements - 1);
  return Layout(std::move(x));
}

bool is_feasible(const Layout& layout, double length, double spacing) {
  const Vector& x = layout.positions();
  for (Index n = 0; n < x.size(); ++n) {
    if (!(x(n) >= 0.0 && x(n) <= length)) return false;
    if (n > 0 && !(x(n) - x(n - 1) >= spacing)) return false;
  }
  return true;
}

bool is_feasible(const Layout& layout, const SystemConfig& cfg) {
  return layout.size() == cfg.num_elements &&
         is_feasible(layout, cfg.waveguide_length, cfg.spacing());
}

double distance(const Point3& user, double x, const SystemConfig& cfg) {
  return distance<double>(user, x, cfg.waveguide_height);
}

Complex element_response(const Point3& user, double x, const SystemConfig& cfg) {
  const double d = distance(user, x, cfg);
  if (d < kDegenerateDistance)
    throw DegenerateGeometry("user coincides with an element at x = " + std::to_string(x));
  const double phase = cfg.free_space_wavenumber() * d + cfg.guided_wavenumber() * x;
  return std::polar(1.0 / d, -phase);
}

CMatrix response_matrix(const UserFrame& frame, const Vector& x, const SystemConfig& cfg) {
  CMatrix eta(frame.num_users(), x.size());
  for (Index n = 0; n < x.size(); ++n)
    for (Index k = 0; k < frame.num_users(); ++k)
      eta(k, n) = element_response(frame.user(k), x(n), cfg);
  return eta;
}

ChannelEvaluation channel(const UserFrame& frame, const Layout& layout, const SplitVector& delta,
                          const SystemConfig& cfg) {
  if (layout.size() != delta.size())
    throw std::invalid_argument("layout and split vector sizes differ");
  const CVector combined = response_matrix(frame, layout.positions(), cfg) *
                           delta.effective().cast<Complex>();
  ChannelEvaluation out;
  out.gain = combined.cwiseAbs2();
  out.h = cfg.xi() * combined;
  return out;
}

double rate(double p_in, double gain, double gamma, LogBase base) {
  return std::log1p(gamma * p_in * gain) * log_scale(base);
}

double sum_rate(const Vector& p_in, const Vector& gain, const Vector& gamma, LogBase base) {
  double total = 0.0;
  for (Index k = 0; k < p_in.size(); ++k) total += rate(p_in(k), gain(k), gamma(k), base);
  return total;
}

double energy_efficiency(const Vector& p_in, const UserFrame& frame, const Layout& layout,
                         const SplitVector& delta, const SystemConfig& cfg) {
  const Vector gain = channel(frame, layout, delta, cfg).gain;
  const double power = p_in.sum() + frame.num_users() * cfg.circuit_power;
  return sum_rate(p_in, gain, frame.gamma, cfg.log_base) / power;
}

double spectral_efficiency(const Vector& p_in, const UserFrame& frame, const Layout& layout,
                           const SplitVector& delta, const SystemConfig& cfg) {
  const Vector gain = channel(frame, layout, delta, cfg).gain;
  return sum_rate(p_in, gain, frame.gamma, cfg.log_base) / frame.num_users();
}

double coupling_length(double delta_n, const SystemConfig& cfg) {
  if (!cfg.coupling_constant)
    throw ConfigError("coupling_constant is required to convert split coefficients to lengths");
  if (!(delta_n >= 0.0 && delta_n <= 1.0))
    throw std::invalid_argument("split coefficient outside [0, 1]");
  return std::acos(delta_n) / *cfg.coupling_constant;
}

Vector coupling_start(const Layout& layout, const SplitVector& delta, const SystemConfig& cfg) {
  Vector start(layout.size());
  for (Index n = 0; n < layout.size(); ++n) start(n) = layout[n] - coupling_length(delta[n], cfg);
  return start;
}

}  // namespace pass
