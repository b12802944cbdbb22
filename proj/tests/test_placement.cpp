#include <doctest.h>

#include <random>

#include "pass/placement.hpp"
#include "support.hpp"

using namespace pass;

namespace {

SystemConfig small_config() {
  SystemConfig cfg;
  cfg.num_users = 3;
  cfg.min_spacing = 0.5;
  return cfg;
}

}  // namespace

TEST_CASE("scalar objective reproduces the full objective at the current point") {
  const SystemConfig cfg = small_config();
  std::mt19937_64 rng(2);
  const UserFrame f = test::random_frame(rng, cfg.num_users, cfg);
  const Layout layout = test::random_layout(rng, 5, cfg.waveguide_length, 1.0);
  const PlacementObjective obj = PlacementObjective::dynamic(
      f, Vector::Constant(3, 1e-3), SplitVector(test::random_split(rng, 5)), cfg);
  for (Index r = 0; r < 5; ++r)
    CHECK(scalar_objective(obj, layout, r, layout[r]) ==
          doctest::Approx(placement_value(obj, layout)).epsilon(1e-12));
}

TEST_CASE("scalar objective equals the objective of the moved layout between neighbours") {
  const SystemConfig cfg = small_config();
  std::mt19937_64 rng(4);
  const UserFrame f = test::random_frame(rng, cfg.num_users, cfg);
  Vector x(3);
  x << 5.0, 20.0, 40.0;
  const Layout layout(x);
  const PlacementObjective obj = PlacementObjective::dynamic(
      f, Vector::Constant(3, 1e-3), SplitVector::constant(3, 0.6), cfg);
  for (double y : {7.0, 12.5, 33.0}) {
    Vector moved = x;
    moved(1) = y;
    CHECK(scalar_objective(obj, layout, 1, y) ==
          doctest::Approx(placement_value(obj, Layout(moved))).epsilon(1e-12));
  }
}

TEST_CASE("sweep never lowers the objective and keeps the layout feasible") {
  const SystemConfig cfg = small_config();
  std::mt19937_64 rng(6);
  const GridSpec grid = GridSpec::uniform(cfg.waveguide_length, 400);
  for (int trial = 0; trial < 10; ++trial) {
    const UserFrame f = test::random_frame(rng, cfg.num_users, cfg);
    const PlacementObjective obj = PlacementObjective::dynamic(
        f, Vector::Constant(3, 1e-3), SplitVector(test::random_split(rng, 4)), cfg);
    const PlacementSweep sweep =
        sweep_locations(obj, Layout::uniform(4, cfg.waveguide_length), grid);
    for (std::size_t i = 1; i < sweep.step_values.size(); ++i)
      CHECK(sweep.step_values[i] >= sweep.step_values[i - 1] - 1e-12);
    CHECK(is_feasible(sweep.layout, cfg.waveguide_length, cfg.spacing()));
    CHECK(placement_value(obj, sweep.layout) ==
          doctest::Approx(sweep.step_values.back()).epsilon(1e-12));
  }
}

TEST_CASE("one element and one user: the element lands on the nearest grid point") {
  SystemConfig cfg = small_config();
  cfg.num_users = 1;
  UserFrame f;
  f.positions = Eigen::Matrix3Xd::Zero(3, 1);
  f.positions(0, 0) = 17.3;
  f.gamma = Vector::Constant(1, cfg.link_constant());
  const PlacementObjective obj = PlacementObjective::dynamic(
      f, Vector::Constant(1, 1e-3), SplitVector::constant(1, 0.0), cfg);
  const GridSpec grid = GridSpec::uniform(cfg.waveguide_length, 101);
  const Layout out = tune_locations(obj, Layout(Vector::Constant(1, 0.0)), grid);
  CHECK(out[0] == doctest::Approx(17.5));
}

TEST_CASE("static placement of two elements matches an exhaustive pair search") {
  SystemConfig cfg = small_config();
  cfg.num_users = 2;
  cfg.min_spacing = 0.0;
  std::mt19937_64 rng(8);
  std::normal_distribution<double> jitter(0.0, 0.5);
  std::vector<UserFrame> frames;
  std::vector<Vector> powers;
  for (int i = 0; i < 40; ++i) {
    UserFrame f;
    f.positions = Eigen::Matrix3Xd::Zero(3, 2);
    f.positions(0, 0) = 10.0 + jitter(rng);
    f.positions(0, 1) = 40.0 + jitter(rng);
    f.gamma = Vector::Constant(2, cfg.link_constant());
    frames.push_back(f);
    powers.push_back(Vector::Constant(2, 1e-3));
  }
  const SplitVector delta(Vector{{0.7071, 0.0}});
  const PlacementObjective obj = PlacementObjective::static_window(frames, powers, delta, cfg);
  const GridSpec grid = GridSpec::uniform(cfg.waveguide_length, 100);

  double best = -1.0;
  Layout best_layout;
  for (Index i = 0; i < grid.points.size(); ++i)
    for (Index j = i + 1; j < grid.points.size(); ++j) {
      const Layout l(Vector{{grid.points(i), grid.points(j)}});
      const double v = placement_value(obj, l);
      if (v > best) {
        best = v;
        best_layout = l;
      }
    }

  Layout layout = Layout::uniform(2, cfg.waveguide_length);
  for (int s = 0; s < 5; ++s) layout = tune_locations(obj, layout, grid);
  CHECK(placement_value(obj, layout) >= best * (1.0 - 1e-3));
  CHECK(std::abs(layout[0] - 10.0) < 2.0);
  CHECK(std::abs(layout[1] - 40.0) < 2.0);
  CHECK(std::abs(best_layout[0] - 10.0) < 2.0);
}

TEST_CASE("static weights") {
  const SystemConfig cfg = small_config();
  std::mt19937_64 rng(10);
  std::vector<UserFrame> frames{test::random_frame(rng, 3, cfg), test::random_frame(rng, 3, cfg)};
  std::vector<Vector> powers{Vector::Constant(3, 1e-3), Vector::Constant(3, 2e-3)};
  const PlacementObjective obj =
      PlacementObjective::static_window(frames, powers, SplitVector::constant(2, 0.5), cfg);
  CHECK(obj.weight(0) == doctest::Approx(1.0 / (2.0 * (3e-3 + 3 * cfg.circuit_power))));
  CHECK(obj.weight(1) == doctest::Approx(1.0 / (2.0 * (6e-3 + 3 * cfg.circuit_power))));
}
