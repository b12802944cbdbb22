#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace pass {

inline constexpr double kSpeedOfLight = 299792458.0;

enum class LogBase { binary, natural };

inline double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt / 1e-3); }

/// Physical and algorithmic constants of one experiment. All values are SI
/// (watts, meters, hertz); dBm/GHz conversion happens when a config file is
/// read.
struct SystemConfig {
  // radio
  double carrier_frequency = 28e9;
  double refractive_index = 1.4;
  double noise_power = 1e-12;  // -90 dBm
  std::optional<double> attenuation_amplitude;  // default lambda / (4 pi)
  LogBase log_base = LogBase::binary;

  // geometry
  double waveguide_length = 50.0;  // also the region side D_x
  double waveguide_height = 3.0;
  double region_depth = 20.0;
  int num_elements = 10;
  std::optional<double> min_spacing;  // default lambda / 2
  std::optional<double> coupling_constant;

  // power
  int num_users = 6;
  double circuit_power = 1e-3;           // 0 dBm
  double power_budget_per_slot = 1e-2;   // 10 dBm

  // algorithm
  int grid_points = 2000;
  int samples_per_window = 20;
  double dinkelbach_tolerance = 1e-6;
  double gradient_step = 0.01;
  bool backtracking = true;
  int max_halvings = 30;
  int max_coupling_iterations = 5000;
  double outer_tolerance = 1e-6;
  int max_outer_iterations = 50;
  int max_inner_iterations = 20;
  double inner_tolerance = 1e-6;
  double initial_split = 0.5;
  double fixed_split = 0.5;
  int workers = 1;

  std::uint64_t rng_seed = 42;

  double wavelength() const { return kSpeedOfLight / carrier_frequency; }
  /// Free-space wavenumber alpha.
  double free_space_wavenumber() const { return 2.0 * std::numbers::pi / wavelength(); }
  /// Guided wavenumber beta.
  double guided_wavenumber() const {
    return 2.0 * std::numbers::pi * refractive_index / wavelength();
  }
  double xi() const {
    return attenuation_amplitude.value_or(wavelength() / (4.0 * std::numbers::pi));
  }
  double spacing() const { return min_spacing.value_or(0.5 * wavelength()); }
  /// Gamma_k = xi_k^2 / sigma_k^2, uniform across users.
  double link_constant() const { return xi() * xi() / noise_power; }
  double region_width() const { return waveguide_length; }
  /// Total input-power budget of one frame, K * P_0.
  double total_budget() const { return num_users * power_budget_per_slot; }
  double total_circuit_power() const { return num_users * circuit_power; }

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

/// Named parameter sets. "paper-v" is the full-resolution setup, "ci" the
/// desk-scale variant (m = 20, Q = 2000).
SystemConfig profile(std::string_view name);

}  // namespace pass
