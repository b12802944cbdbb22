#pragma once

// INI-style experiment files. Keys are SystemConfig field names and may sit
// in any section; powers accept W, mW or dBm, frequencies Hz, MHz or GHz,
// lengths m, cm or mm. Bare numbers are SI. The [experiment] section holds
// the sweep lists.
//
//   [radio]
//   carrier_frequency = 28 GHz
//   noise_power = -90 dBm
//
//   [experiment]
//   power_dbm = 0, 10, 20

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pass/config.hpp"

namespace pass {

struct ExperimentPlan {
  SystemConfig system;
  std::vector<double> power_dbm{0.0, 10.0, 20.0};
  std::vector<int> elements{4, 8, 16};
  std::vector<double> region_widths{30.0, 50.0, 70.0};
  std::vector<int> convergence_elements{4, 10};
  std::vector<std::string> modes;  // empty: per-command default
};

/// Sets one SystemConfig field (or plan list) from its textual value.
/// Throws ConfigError on unknown keys or malformed values.
void apply_setting(ExperimentPlan& plan, std::string_view key, std::string_view value);

ExperimentPlan parse_config(std::istream& in, ExperimentPlan base);
ExperimentPlan load_config(const std::filesystem::path& path, ExperimentPlan base);

/// Splits "a, b, c".
std::vector<std::string> split_list(std::string_view text);

}  // namespace pass
