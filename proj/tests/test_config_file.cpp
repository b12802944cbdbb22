#include <doctest.h>

#include <sstream>

#include "pass/config_file.hpp"
#include "pass/error.hpp"

using namespace pass;

TEST_CASE("units are converted to SI") {
  std::istringstream in(R"(
[radio]
carrier_frequency = 30 GHz
noise_power = -90 dBm

[geometry]
num_elements = 8
min_spacing = 5 mm
region_width = 70

[power]
circuit_power = 2 mW
power_budget_per_slot = 0.5 W

[experiment]
power_dbm = 0, 5
elements = 2,4
modes = dynamic-tunable-ee, fixed-antenna
)");
  const ExperimentPlan plan = parse_config(in, ExperimentPlan{});
  CHECK(plan.system.carrier_frequency == doctest::Approx(30e9));
  CHECK(plan.system.noise_power == doctest::Approx(1e-12));
  CHECK(plan.system.num_elements == 8);
  CHECK(*plan.system.min_spacing == doctest::Approx(5e-3));
  CHECK(plan.system.waveguide_length == 70.0);
  CHECK(plan.system.circuit_power == doctest::Approx(2e-3));
  CHECK(plan.system.power_budget_per_slot == 0.5);
  CHECK(plan.power_dbm == std::vector<double>{0.0, 5.0});
  CHECK(plan.elements == std::vector<int>{2, 4});
  CHECK(plan.modes == std::vector<std::string>{"dynamic-tunable-ee", "fixed-antenna"});
}

TEST_CASE("unspecified keys keep the base values") {
  std::istringstream in("[algorithm]\ngrid_points = 123\n");
  ExperimentPlan base;
  base.system = profile("paper-v");
  const ExperimentPlan plan = parse_config(in, base);
  CHECK(plan.system.grid_points == 123);
  CHECK(plan.system.samples_per_window == base.system.samples_per_window);
}

TEST_CASE("bad input is reported") {
  ExperimentPlan plan;
  CHECK_THROWS_AS(apply_setting(plan, "no_such_key", "1"), ConfigError);
  CHECK_THROWS_AS(apply_setting(plan, "num_elements", "four"), ConfigError);
  CHECK_THROWS_AS(apply_setting(plan, "noise_power", "3 furlongs"), ConfigError);
  CHECK_THROWS_AS(apply_setting(plan, "log_base", "10"), ConfigError);
  apply_setting(plan, "log_base", "e");
  CHECK(plan.system.log_base == LogBase::natural);
  CHECK_THROWS_AS(profile("nope"), ConfigError);
}

TEST_CASE("validation of the assembled configuration") {
  SystemConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.num_elements = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = SystemConfig{};
  cfg.num_elements = 200;
  cfg.min_spacing = 1.0;  // 199 gaps of 1 m do not fit on 50 m
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("list splitting") {
  CHECK(split_list(" a, b ,c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_list("").empty());
}

TEST_CASE("power conversions") {
  CHECK(dbm_to_watt(0.0) == doctest::Approx(1e-3));
  CHECK(dbm_to_watt(-90.0) == doctest::Approx(1e-12));
  CHECK(watt_to_dbm(1.0) == doctest::Approx(30.0));
}
