#include <doctest.h>

#include "pass/design.hpp"
#include "pass/error.hpp"
#include "pass/sweep.hpp"

using namespace pass;

namespace {

SystemConfig quick_config() {
  SystemConfig cfg = profile("ci");
  cfg.samples_per_window = 4;
  cfg.grid_points = 300;
  cfg.num_elements = 4;
  cfg.rng_seed = 3;
  return cfg;
}

void check_ascent(const DesignOutcome& out) {
  for (std::size_t i = 1; i < out.trace.size(); ++i)
    CHECK(out.trace[i] >= out.trace[i - 1] - 1e-9 * std::abs(out.trace[i - 1]));
}

}  // namespace

TEST_CASE("mode labels round-trip") {
  for (const char* label : {"dynamic-tunable-ee", "static-fixed-se", "fixed-antenna"})
    CHECK(DesignMode::parse(label).label() == label);
  CHECK(DesignMode::parse("static-fixed-ee", 0.3).fixed_split == 0.3);
  CHECK_THROWS_AS(DesignMode::parse("dynamic-ee"), ConfigError);
}

TEST_CASE("dynamic and static designs ascend and stay feasible") {
  const SystemConfig cfg = quick_config();
  const Scenario sc = generate_scenario(cfg);
  for (const char* label : {"dynamic-tunable-ee", "static-tunable-ee", "dynamic-fixed-se"}) {
    const DesignOutcome out = solve(sc, DesignMode::parse(label), cfg);
    INFO(label);
    check_ascent(out);
    CHECK_NOTHROW(verify_outcome(sc, out, cfg));
    CHECK(out.windowed_ee == doctest::Approx(replay_windowed_ee(sc, out, cfg)).epsilon(1e-12));
  }
}

TEST_CASE("one frame: static and dynamic coincide") {
  SystemConfig cfg = quick_config();
  cfg.samples_per_window = 1;
  const Scenario sc = generate_scenario(cfg);
  const DesignOutcome dyn = solve(sc, DesignMode::parse("dynamic-fixed-ee"), cfg);
  const DesignOutcome sta = solve(sc, DesignMode::parse("static-fixed-ee"), cfg);
  CHECK(dyn.windowed_ee == doctest::Approx(sta.windowed_ee).epsilon(1e-3));
}

TEST_CASE("fixed antenna baseline") {
  const SystemConfig cfg = quick_config();
  const Scenario sc = generate_scenario(cfg);
  const DesignOutcome base = solve_baseline_fixed_antenna(sc, cfg);
  CHECK(base.layouts.size() == 1);
  CHECK(base.layout(0)[0] == doctest::Approx(0.5 * cfg.waveguide_length));
  CHECK(base.delta_final[0] == 0.0);
  const DesignOutcome dyn = solve(sc, DesignMode::parse("dynamic-tunable-ee"), cfg);
  CHECK(dyn.windowed_ee >= base.windowed_ee);

  SystemConfig coarse = cfg;
  coarse.grid_points = 50;
  coarse.num_elements = 9;
  CHECK(solve_baseline_fixed_antenna(sc, coarse).windowed_ee == doctest::Approx(base.windowed_ee));
}

TEST_CASE("one user, one element right below the center") {
  SystemConfig cfg = quick_config();
  cfg.num_users = 1;
  Scenario sc;
  sc.region_width = cfg.waveguide_length;
  sc.region_depth = cfg.region_depth;
  UserFrame f;
  f.positions = Eigen::Matrix3Xd::Zero(3, 1);
  f.positions(0, 0) = 0.5 * cfg.waveguide_length;
  f.gamma = Vector::Constant(1, cfg.link_constant());
  sc.frames.push_back(f);
  const DesignOutcome base = solve_baseline_fixed_antenna(sc, cfg);
  const double gain = 1.0 / (cfg.waveguide_height * cfg.waveguide_height);
  const double p = base.allocations.front()(0);
  CHECK(base.windowed_ee ==
        doctest::Approx(std::log2(1.0 + cfg.link_constant() * p * gain) / (p + cfg.circuit_power)));
}
