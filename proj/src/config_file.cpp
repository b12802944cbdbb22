#include "pass/config_file.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "pass/error.hpp"

namespace pass {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

struct Quantity {
  double number;
  std::string unit;
};

Quantity split_quantity(std::string_view key, std::string_view text) {
  text = trim(text);
  double number = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), number);
  if (ec != std::errc() || !std::isfinite(number))
    throw ConfigError("'" + std::string(key) + "': expected a number, got '" + std::string(text) + "'");
  return {number, std::string(trim(std::string_view(end, text.data() + text.size() - end)))};
}

[[noreturn]] void bad_unit(std::string_view key, const std::string& unit) {
  throw ConfigError("'" + std::string(key) + "': unsupported unit '" + unit + "'");
}

double parse_power(std::string_view key, std::string_view text) {
  const Quantity q = split_quantity(key, text);
  if (q.unit.empty() || q.unit == "W") return q.number;
  if (q.unit == "mW") return 1e-3 * q.number;
  if (q.unit == "dBm") return dbm_to_watt(q.number);
  bad_unit(key, q.unit);
}

double parse_frequency(std::string_view key, std::string_view text) {
  const Quantity q = split_quantity(key, text);
  if (q.unit.empty() || q.unit == "Hz") return q.number;
  if (q.unit == "MHz") return 1e6 * q.number;
  if (q.unit == "GHz") return 1e9 * q.number;
  bad_unit(key, q.unit);
}

double parse_length(std::string_view key, std::string_view text) {
  const Quantity q = split_quantity(key, text);
  if (q.unit.empty() || q.unit == "m") return q.number;
  if (q.unit == "cm") return 1e-2 * q.number;
  if (q.unit == "mm") return 1e-3 * q.number;
  bad_unit(key, q.unit);
}

double parse_plain(std::string_view key, std::string_view text) {
  const Quantity q = split_quantity(key, text);
  if (!q.unit.empty()) bad_unit(key, q.unit);
  return q.number;
}

int parse_int(std::string_view key, std::string_view text) {
  const double v = parse_plain(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw ConfigError("'" + std::string(key) + "': expected an integer");
  return static_cast<int>(v);
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("'" + std::string(key) + "': expected true or false");
}

using Setter = std::function<void(ExperimentPlan&, std::string_view, std::string_view)>;

template <typename Field>
Setter power(Field field) {
  return [field](ExperimentPlan& p, std::string_view k, std::string_view v) {
    p.system.*field = parse_power(k, v);
  };
}
template <typename Field>
Setter length(Field field) {
  return [field](ExperimentPlan& p, std::string_view k, std::string_view v) {
    p.system.*field = parse_length(k, v);
  };
}
template <typename Field>
Setter plain(Field field) {
  return [field](ExperimentPlan& p, std::string_view k, std::string_view v) {
    p.system.*field = parse_plain(k, v);
  };
}
template <typename Field>
Setter integer(Field field) {
  return [field](ExperimentPlan& p, std::string_view k, std::string_view v) {
    p.system.*field = parse_int(k, v);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"carrier_frequency",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.system.carrier_frequency = parse_frequency(k, v);
       }},
      {"refractive_index", plain(&SystemConfig::refractive_index)},
      {"noise_power", power(&SystemConfig::noise_power)},
      {"attenuation_amplitude",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.system.attenuation_amplitude = parse_plain(k, v);
       }},
      {"log_base",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         v = trim(v);
         if (v == "2") p.system.log_base = LogBase::binary;
         else if (v == "e") p.system.log_base = LogBase::natural;
         else throw ConfigError("'" + std::string(k) + "': expected 2 or e");
       }},
      {"waveguide_length", length(&SystemConfig::waveguide_length)},
      {"region_width", length(&SystemConfig::waveguide_length)},
      {"waveguide_height", length(&SystemConfig::waveguide_height)},
      {"region_depth", length(&SystemConfig::region_depth)},
      {"num_elements", integer(&SystemConfig::num_elements)},
      {"min_spacing",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.system.min_spacing = parse_length(k, v);
       }},
      {"coupling_constant",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.system.coupling_constant = parse_plain(k, v);
       }},
      {"num_users", integer(&SystemConfig::num_users)},
      {"circuit_power", power(&SystemConfig::circuit_power)},
      {"power_budget_per_slot", power(&SystemConfig::power_budget_per_slot)},
      {"grid_points", integer(&SystemConfig::grid_points)},
      {"samples_per_window", integer(&SystemConfig::samples_per_window)},
      {"dinkelbach_tolerance", plain(&SystemConfig::dinkelbach_tolerance)},
      {"gradient_step", plain(&SystemConfig::gradient_step)},
      {"backtracking",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.system.backtracking = parse_bool(k, v);
       }},
      {"max_halvings", integer(&SystemConfig::max_halvings)},
      {"max_coupling_iterations", integer(&SystemConfig::max_coupling_iterations)},
      {"outer_tolerance", plain(&SystemConfig::outer_tolerance)},
      {"max_outer_iterations", integer(&SystemConfig::max_outer_iterations)},
      {"max_inner_iterations", integer(&SystemConfig::max_inner_iterations)},
      {"inner_tolerance", plain(&SystemConfig::inner_tolerance)},
      {"initial_split", plain(&SystemConfig::initial_split)},
      {"fixed_split", plain(&SystemConfig::fixed_split)},
      {"workers", integer(&SystemConfig::workers)},
      {"rng_seed",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         v = trim(v);
         std::uint64_t seed = 0;
         const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
         if (ec != std::errc() || end != v.data() + v.size())
           throw ConfigError("'" + std::string(k) + "': expected an unsigned integer");
         p.system.rng_seed = seed;
       }},
      {"power_dbm",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.power_dbm.clear();
         for (const auto& item : split_list(v)) p.power_dbm.push_back(parse_plain(k, item));
       }},
      {"elements",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.elements.clear();
         for (const auto& item : split_list(v)) p.elements.push_back(parse_int(k, item));
       }},
      {"region_widths",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.region_widths.clear();
         for (const auto& item : split_list(v)) p.region_widths.push_back(parse_length(k, item));
       }},
      {"convergence_elements",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.convergence_elements.clear();
         for (const auto& item : split_list(v))
           p.convergence_elements.push_back(parse_int(k, item));
       }},
      {"modes",
       [](ExperimentPlan& p, std::string_view, std::string_view v) { p.modes = split_list(v); }},
  };
  return table;
}

}  // namespace

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

void apply_setting(ExperimentPlan& plan, std::string_view key, std::string_view value) {
  const auto it = setters().find(trim(key));
  if (it == setters().end()) throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  it->second(plan, trim(key), value);
}

ExperimentPlan parse_config(std::istream& in, ExperimentPlan base) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      apply_setting(base, name, node.data());
      continue;
    }
    for (const auto& [key, leaf] : node) apply_setting(base, key, leaf.data());
  }
  return base;
}

ExperimentPlan load_config(const std::filesystem::path& path, ExperimentPlan base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file " + path.string());
  return parse_config(in, std::move(base));
}

}  // namespace pass
