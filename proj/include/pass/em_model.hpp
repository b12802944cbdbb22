#pragma once

// Power splitting along the waveguide and the resulting downlink channel,
// rate and efficiency figures.

#include <cmath>
#include <numbers>
#include <vector>

#include "pass/config.hpp"
#include "pass/types.hpp"

namespace pass {

/// Distance below which a user is considered to sit on an element.
inline constexpr double kDegenerateDistance = 1e-9;

/// Effective split coefficients A_n = sqrt(1 - d_n^2) * prod_{i<n} d_i.
/// Product form throughout, so boundary values 0 and 1 are safe.
template <typename Derived>
VectorX<typename Derived::Scalar> effective_splits(const Eigen::MatrixBase<Derived>& delta) {
  using Scalar = typename Derived::Scalar;
  using std::sqrt;
  VectorX<Scalar> out(delta.size());
  Scalar carried(1);
  for (Index n = 0; n < delta.size(); ++n) {
    const Scalar d = delta(n);
    out(n) = sqrt((Scalar(1) - d) * (Scalar(1) + d)) * carried;
    carried *= d;
  }
  return out;
}

/// Fraction of the input power left in the waveguide past the last element.
template <typename Derived>
typename Derived::Scalar residual_power_fraction(const Eigen::MatrixBase<Derived>& delta) {
  using Scalar = typename Derived::Scalar;
  Scalar out(1);
  for (Index n = 0; n < delta.size(); ++n) out *= delta(n) * delta(n);
  return out;
}

/// Cap on |d A_n / d delta_n| where sqrt(1 - delta_n^2) vanishes.
inline constexpr double kSplitDerivativeCap = 1e8;

/// Jacobian J(n, i) = dA_n / d delta_i. Lower triangular; computed without
/// dividing by any delta_i.
template <typename Derived>
MatrixX<typename Derived::Scalar> split_jacobian(const Eigen::MatrixBase<Derived>& delta) {
  using Scalar = typename Derived::Scalar;
  using std::sqrt;
  const Index n_el = delta.size();
  MatrixX<Scalar> jac = MatrixX<Scalar>::Zero(n_el, n_el);

  VectorX<Scalar> root(n_el);
  VectorX<Scalar> prefix(n_el);  // prod_{j<n} delta_j
  Scalar carried(1);
  for (Index n = 0; n < n_el; ++n) {
    root(n) = sqrt((Scalar(1) - delta(n)) * (Scalar(1) + delta(n)));
    prefix(n) = carried;
    carried *= delta(n);
  }

  for (Index i = 0; i < n_el; ++i) {
    const Scalar cap(kSplitDerivativeCap);
    Scalar own = root(i) > Scalar(0) ? -delta(i) / root(i) : -cap;
    if (own < -cap) own = -cap;
    jac(i, i) = own * prefix(i);

    Scalar skipping = prefix(i);  // prod_{j<n, j != i} delta_j
    for (Index n = i + 1; n < n_el; ++n) {
      jac(n, i) = root(n) * skipping;
      skipping *= delta(n);
    }
  }
  return jac;
}

template <typename Scalar>
Scalar distance(const Eigen::Matrix<Scalar, 3, 1>& user, Scalar x, Scalar height) {
  using std::sqrt;
  const Scalar dx = user(0) - x;
  const Scalar dy = user(1);
  const Scalar dz = user(2) - height;
  return sqrt(dx * dx + dy * dy + dz * dz);
}

/// Coupling split coefficients delta in [0, 1]^N.
class SplitVector {
public:
  SplitVector() = default;
  /// Throws std::invalid_argument if any entry is outside [0, 1].
  explicit SplitVector(Vector delta);

  static SplitVector constant(Index n, double value);

  const Vector& values() const { return delta_; }
  Index size() const { return delta_.size(); }
  double operator[](Index n) const { return delta_(n); }

  Vector effective() const { return effective_splits(delta_); }
  double residual() const { return residual_power_fraction(delta_); }

  friend bool operator==(const SplitVector& a, const SplitVector& b) {
    return a.delta_.size() == b.delta_.size() && a.delta_ == b.delta_;
  }

private:
  Vector delta_;
};

/// Effective element locations on the waveguide, ascending.
class Layout {
public:
  Layout() = default;
  /// Throws std::invalid_argument if the positions are not ascending.
  explicit Layout(Vector positions);

  /// x_n = (n - 1) L / (N - 1); a single element sits at L / 2.
  static Layout uniform(int num_elements, double length);

  const Vector& positions() const { return x_; }
  Index size() const { return x_.size(); }
  double operator[](Index n) const { return x_(n); }

  friend bool operator==(const Layout& a, const Layout& b) {
    return a.x_.size() == b.x_.size() && a.x_ == b.x_;
  }

private:
  Vector x_;
};

/// Membership in the feasible set: inside [0, length], consecutive gaps >= spacing.
bool is_feasible(const Layout& layout, double length, double spacing);
bool is_feasible(const Layout& layout, const SystemConfig& cfg);

/// User positions of one coherence frame, one column per user.
struct UserFrame {
  Eigen::Matrix3Xd positions;
  Vector gamma;  // Gamma_k = xi_k^2 / sigma_k^2

  Index num_users() const { return positions.cols(); }
  Point3 user(Index k) const { return positions.col(k); }
};

struct ChannelEvaluation {
  CVector h;
  Vector gain;  // |h_k|^2 / xi_k^2
};

double distance(const Point3& user, double x, const SystemConfig& cfg);

/// Per-element response exp(-j(alpha D + beta x)) / D. Throws
/// DegenerateGeometry when D < kDegenerateDistance.
Complex element_response(const Point3& user, double x, const SystemConfig& cfg);

/// K x N matrix of element responses.
CMatrix response_matrix(const UserFrame& frame, const Vector& x, const SystemConfig& cfg);

ChannelEvaluation channel(const UserFrame& frame, const Layout& layout, const SplitVector& delta,
                          const SystemConfig& cfg);

/// log(1 + Gamma p G) in the configured base.
double rate(double p_in, double gain, double gamma, LogBase base = LogBase::binary);

/// Converts natural-log rate units to the configured base.
inline double log_scale(LogBase base) {
  return base == LogBase::binary ? 1.0 / std::numbers::ln2 : 1.0;
}

double sum_rate(const Vector& p_in, const Vector& gain, const Vector& gamma, LogBase base);

/// (sum_k R_k) / (sum_k P_k + K P_cir).
double energy_efficiency(const Vector& p_in, const UserFrame& frame, const Layout& layout,
                         const SplitVector& delta, const SystemConfig& cfg);

/// (1 / K) sum_k R_k.
double spectral_efficiency(const Vector& p_in, const UserFrame& frame, const Layout& layout,
                           const SplitVector& delta, const SystemConfig& cfg);

/// Physical coupling length arccos(delta_n) / kappa. Throws ConfigError when
/// the coupling constant is not configured.
double coupling_length(double delta_n, const SystemConfig& cfg);

/// Coupling start points x_n - l_n.
Vector coupling_start(const Layout& layout, const SplitVector& delta, const SystemConfig& cfg);

}  // namespace pass
