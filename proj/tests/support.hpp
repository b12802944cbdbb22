#pragma once

#include <random>

#include "pass/config.hpp"
#include "pass/em_model.hpp"

namespace pass::test {

inline UserFrame random_frame(std::mt19937_64& rng, int users, const SystemConfig& cfg) {
  std::uniform_real_distribution<double> ux(0.0, cfg.region_width());
  std::uniform_real_distribution<double> uy(-0.5 * cfg.region_depth, 0.5 * cfg.region_depth);
  UserFrame frame;
  frame.positions.resize(3, users);
  for (int k = 0; k < users; ++k) frame.positions.col(k) = Point3(ux(rng), uy(rng), 0.0);
  frame.gamma = Vector::Constant(users, cfg.link_constant());
  return frame;
}

inline Vector random_split(std::mt19937_64& rng, int n, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector d(n);
  for (int i = 0; i < n; ++i) d(i) = u(rng);
  return d;
}

/// Sorted layout with gaps of at least `gap`, drawn on [0, length].
inline Layout random_layout(std::mt19937_64& rng, int n, double length, double gap) {
  std::uniform_real_distribution<double> u(0.0, length - gap * (n - 1));
  Vector x(n);
  for (int i = 0; i < n; ++i) x(i) = u(rng);
  std::sort(x.begin(), x.end());
  for (int i = 0; i < n; ++i) x(i) += gap * i;
  return Layout(x);
}

}  // namespace pass::test
