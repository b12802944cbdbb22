#include "pass/config.hpp"

#include <cmath>

#include "pass/error.hpp"

namespace pass {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid configuration: " + what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void SystemConfig::validate() const {
  require(positive(carrier_frequency), "carrier_frequency must be > 0");
  require(positive(refractive_index), "refractive_index must be > 0");
  require(positive(noise_power), "noise_power must be > 0");
  require(!attenuation_amplitude || positive(*attenuation_amplitude),
          "attenuation_amplitude must be > 0");
  require(positive(waveguide_length), "waveguide_length must be > 0");
  require(positive(waveguide_height), "waveguide_height must be > 0");
  require(std::isfinite(region_depth) && region_depth >= 0.0, "region_depth must be >= 0");
  require(num_elements >= 1, "num_elements must be >= 1");
  require(positive(spacing()), "min_spacing must be > 0");
  require(!coupling_constant || positive(*coupling_constant), "coupling_constant must be > 0");
  require(num_users >= 1, "num_users must be >= 1");
  require(positive(circuit_power), "circuit_power must be > 0");
  require(positive(power_budget_per_slot), "power_budget_per_slot must be > 0");
  require(grid_points >= 2, "grid_points must be >= 2");
  require(samples_per_window >= 1, "samples_per_window must be >= 1");
  require(positive(dinkelbach_tolerance), "dinkelbach_tolerance must be > 0");
  require(positive(gradient_step), "gradient_step must be > 0");
  require(max_halvings >= 0, "max_halvings must be >= 0");
  require(max_coupling_iterations >= 1, "max_coupling_iterations must be >= 1");
  require(positive(outer_tolerance), "outer_tolerance must be > 0");
  require(max_outer_iterations >= 1, "max_outer_iterations must be >= 1");
  require(max_inner_iterations >= 1, "max_inner_iterations must be >= 1");
  require(positive(inner_tolerance), "inner_tolerance must be > 0");
  require(initial_split >= 0.0 && initial_split <= 1.0, "initial_split must lie in [0, 1]");
  require(fixed_split >= 0.0 && fixed_split <= 1.0, "fixed_split must lie in [0, 1]");
  require(workers >= 1, "workers must be >= 1");
  require((num_elements - 1) * spacing() <= waveguide_length,
          "(num_elements - 1) * min_spacing exceeds waveguide_length");
}

SystemConfig profile(std::string_view name) {
  SystemConfig cfg;
  if (name == "ci") return cfg;
  if (name == "paper-v") {
    cfg.grid_points = 10000;
    cfg.samples_per_window = 50;
    return cfg;
  }
  throw ConfigError("unknown profile '" + std::string(name) + "' (expected paper-v or ci)");
}

}  // namespace pass
