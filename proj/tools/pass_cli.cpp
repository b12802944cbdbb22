// Command-line front end: runs single designs, convergence traces and the
// parameter sweeps, writing CSV to --out (or stdout).
//
// Exit codes: 0 success, 1 configuration error, 2 non-convergence or a
// failed invariant check. Log verbosity follows SPDLOG_LEVEL (e.g.
// SPDLOG_LEVEL=debug).

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/cfg/env.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "pass/config_file.hpp"
#include "pass/error.hpp"
#include "pass/sweep.hpp"
#include "pass/validation.hpp"

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> modes;
  std::string out_path;
  std::string profile = "ci";
  bool plain_gradient = false;
  bool timing = false;
  std::optional<int> workers;
  std::vector<std::string> values;
  std::vector<std::string> overrides;
};

void add_shared(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "Experiment file (INI)");
  cmd->add_option("--seed", o.seed, "Scenario seed");
  cmd->add_option("--modes", o.modes, "Design modes, comma separated")->delimiter(',');
  cmd->add_option("--out", o.out_path, "CSV output path (default stdout)");
  cmd->add_option("--profile", o.profile, "Base parameter set")
      ->check(CLI::IsMember({"paper-v", "ci"}));
  cmd->add_flag("--plain-gradient", o.plain_gradient,
                "Fixed-step coupling updates without backtracking");
  cmd->add_flag("--timing", o.timing, "Write wall time to the seconds column");
  cmd->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--set", o.overrides, "Override a configuration key (key=value)");
}

pass::ExperimentPlan build_plan(const Options& o) {
  pass::ExperimentPlan plan;
  plan.system = pass::profile(o.profile);
  if (!o.config_path.empty()) plan = pass::load_config(o.config_path, std::move(plan));
  for (const std::string& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw pass::ConfigError("--set expects key=value, got '" + kv + "'");
    pass::apply_setting(plan, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.seed) plan.system.rng_seed = *o.seed;
  if (o.plain_gradient) plan.system.backtracking = false;
  if (o.workers) plan.system.workers = *o.workers;
  if (!o.modes.empty()) plan.modes = o.modes;
  plan.system.validate();
  return plan;
}

std::vector<pass::DesignMode> modes_or(const pass::ExperimentPlan& plan,
                                       std::vector<std::string> fallback) {
  return pass::parse_modes(plan.modes.empty() ? fallback : plan.modes, plan.system.fixed_split);
}

template <typename T>
std::vector<T> values_or(const Options& o, const char* key, std::vector<T> fallback) {
  if (o.values.empty()) return fallback;
  std::vector<T> out;
  for (const std::string& v : o.values) {
    try {
      std::size_t used = 0;
      const double x = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      out.push_back(static_cast<T>(x));
    } catch (const std::exception&) {
      throw pass::ConfigError(std::string("--values for ") + key + ": cannot parse '" + v + "'");
    }
  }
  return out;
}

int emit(const Options& o, const pass::SweepResult& result) {
  if (o.out_path.empty()) {
    pass::write_csv(std::cout, result, o.timing);
  } else {
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) throw pass::ConfigError("cannot write " + o.out_path);
    pass::write_csv(file, result, o.timing);
  }
  if (!result.all_converged()) {
    spdlog::warn("at least one design did not converge");
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("pass"));
  spdlog::set_level(spdlog::level::warn);
  spdlog::cfg::load_env_levels();

  CLI::App app{"Energy-efficient pinching-antenna design: simulations and sweeps"};
  app.require_subcommand(1);
  Options o;

  auto* single = app.add_subcommand("single-run", "Solve every requested mode at the configured point");
  auto* convergence = app.add_subcommand("convergence", "Outer-iteration traces per element count");
  auto* power = app.add_subcommand("sweep-power", "Efficiency versus P_0 (dBm)");
  auto* elements = app.add_subcommand("sweep-elements", "Efficiency versus element count");
  auto* region = app.add_subcommand("sweep-region", "Efficiency versus region side D_x (m)");
  auto* validate = app.add_subcommand("validate", "Run the randomized invariant checks");
  for (CLI::App* cmd : {single, convergence, power, elements, region, validate}) add_shared(cmd, o);
  for (CLI::App* cmd : {convergence, power, elements, region})
    cmd->add_option("--values", o.values, "Sweep values, comma separated")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    const pass::ExperimentPlan plan = build_plan(o);
    const pass::SystemConfig& cfg = plan.system;
    const int workers = cfg.workers;

    if (*single)
      return emit(o, pass::run_single(cfg, modes_or(plan, {"dynamic-tunable-ee", "static-tunable-ee", "fixed-antenna"}), workers));
    if (*convergence)
      return emit(o, pass::run_convergence(cfg, values_or<int>(o, "convergence", plan.convergence_elements),
                                           modes_or(plan, {"dynamic-tunable-ee", "static-tunable-ee"}), workers));
    if (*power) {
      std::vector<pass::DesignMode> modes =
          plan.modes.empty() ? pass::all_modes(cfg.fixed_split) : modes_or(plan, {});
      return emit(o, pass::run_power_sweep(cfg, values_or<double>(o, "sweep-power", plan.power_dbm), modes, workers));
    }
    if (*elements)
      return emit(o, pass::run_element_sweep(
                         cfg, values_or<int>(o, "sweep-elements", plan.elements),
                         modes_or(plan, {"dynamic-tunable-ee", "dynamic-fixed-ee", "static-tunable-ee", "static-fixed-ee"}),
                         workers));
    if (*region)
      return emit(o, pass::run_region_sweep(cfg, values_or<double>(o, "sweep-region", plan.region_widths),
                                            modes_or(plan, {"dynamic-tunable-ee", "static-tunable-ee", "fixed-antenna"}), workers));
    if (*validate) {
      bool ok = true;
      for (const pass::CheckResult& check : pass::run_invariant_suite(cfg)) {
        std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << check.name << " (" << check.detail << ")\n";
        ok = ok && check.passed;
      }
      return ok ? 0 : 2;
    }
  } catch (const pass::ConfigError& e) {
    spdlog::error("{}", e.what());
    return 1;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 2;
  }
  return 0;
}
