#include "pass/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <tuple>

#include "pass/error.hpp"
#include "pass/parallel.hpp"

namespace pass {

bool SweepResult::all_converged() const {
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.converged; });
}

void SweepResult::sort() {
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.sweep_var, a.mode) < std::tie(b.sweep_var, b.mode);
  });
}

namespace {

std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

using Job = std::function<std::vector<SweepRow>()>;

SweepResult run_jobs(const std::vector<Job>& jobs, int workers) {
  std::vector<std::vector<SweepRow>> slots(jobs.size());
  parallel_for(jobs.size(), workers, [&](std::size_t i) { slots[i] = jobs[i](); });
  SweepResult result;
  for (auto& slot : slots)
    for (auto& row : slot) result.rows.push_back(std::move(row));
  result.sort();
  return result;
}

/// Solves one (config, mode) point and summarizes it as a single row.
std::vector<SweepRow> solve_point(const Scenario& scenario, const DesignMode& mode,
                                  SystemConfig cfg, double sweep_var) {
  cfg.workers = 1;
  const auto start = std::chrono::steady_clock::now();
  const DesignOutcome outcome = solve(scenario, mode, cfg);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  verify_outcome(scenario, outcome, cfg);
  return {{sweep_var, mode.label(), outcome.windowed_ee, outcome.windowed_se,
           outcome.outer_iterations, seconds, outcome.converged}};
}

}  // namespace

void write_csv(std::ostream& out, const SweepResult& result, bool with_timing) {
  out << kCsvHeader << '\n';
  for (const SweepRow& row : result.rows) {
    out << format_float(row.sweep_var) << ',' << row.mode << ',' << format_float(row.ee) << ','
        << format_float(row.se) << ',' << row.outer_iters << ','
        << format_float(with_timing ? row.seconds : 0.0) << '\n';
  }
}

void verify_outcome(const Scenario& scenario, const DesignOutcome& outcome,
                    const SystemConfig& cfg) {
  const std::string label = outcome.mode.label();
  const double budget = cfg.total_budget();
  for (const Vector& p : outcome.allocations) {
    if ((p.array() < 0.0).any() || p.sum() > budget + 1e-9)
      throw Error(label + ": allocation violates the power budget");
  }
  for (const Layout& layout : outcome.layouts) {
    if (layout.size() != outcome.delta_final.size() ||
        !is_feasible(layout, scenario.region_width, cfg.spacing()))
      throw Error(label + ": layout outside the feasible set");
  }
  const double replay = replay_windowed_ee(scenario, outcome, cfg);
  if (std::abs(replay - outcome.windowed_ee) > 1e-9 * std::max(1.0, std::abs(replay)))
    throw Error(label + ": stored efficiency does not replay");
}

std::vector<DesignMode> parse_modes(const std::vector<std::string>& labels, double fixed_split) {
  std::vector<DesignMode> modes;
  for (const std::string& l : labels) modes.push_back(DesignMode::parse(l, fixed_split));
  return modes;
}

std::vector<DesignMode> all_modes(double fixed_split) {
  std::vector<std::string> labels;
  for (const char* placement : {"dynamic", "static"})
    for (const char* coupling : {"tunable", "fixed"})
      for (const char* objective : {"ee", "se"})
        labels.push_back(std::string(placement) + "-" + coupling + "-" + objective);
  labels.emplace_back("fixed-antenna");
  return parse_modes(labels, fixed_split);
}

SweepResult run_single(const SystemConfig& cfg, const std::vector<DesignMode>& modes,
                       int workers) {
  const Scenario scenario = generate_scenario(cfg);
  std::vector<Job> jobs;
  const double p0 = watt_to_dbm(cfg.power_budget_per_slot);
  for (const DesignMode& mode : modes)
    jobs.push_back([&, mode] { return solve_point(scenario, mode, cfg, p0); });
  return run_jobs(jobs, workers);
}

SweepResult run_convergence(const SystemConfig& cfg, const std::vector<int>& elements,
                            const std::vector<DesignMode>& modes, int workers) {
  const Scenario scenario = generate_scenario(cfg);
  std::vector<Job> jobs;
  for (int n : elements) {
    for (const DesignMode& mode : modes) {
      jobs.push_back([&, n, mode] {
        SystemConfig point = cfg;
        point.num_elements = n;
        point.workers = 1;
        const DesignOutcome outcome = solve(scenario, mode, point);
        verify_outcome(scenario, outcome, point);
        std::vector<SweepRow> rows;
        const std::string label = mode.label() + "/N" + std::to_string(n);
        for (std::size_t t = 0; t < outcome.trace_ee.size(); ++t)
          rows.push_back({static_cast<double>(t), label, outcome.trace_ee[t], outcome.trace_se[t],
                          static_cast<int>(t), 0.0, outcome.converged});
        return rows;
      });
    }
  }
  return run_jobs(jobs, workers);
}

SweepResult run_power_sweep(const SystemConfig& cfg, const std::vector<double>& power_dbm,
                            const std::vector<DesignMode>& modes, int workers) {
  const Scenario scenario = generate_scenario(cfg);
  std::vector<Job> jobs;
  for (double dbm : power_dbm) {
    for (const DesignMode& mode : modes) {
      jobs.push_back([&, dbm, mode] {
        SystemConfig point = cfg;
        point.power_budget_per_slot = dbm_to_watt(dbm);
        return solve_point(scenario, mode, point, dbm);
      });
    }
  }
  return run_jobs(jobs, workers);
}

SweepResult run_element_sweep(const SystemConfig& cfg, const std::vector<int>& elements,
                              const std::vector<DesignMode>& modes, int workers) {
  const Scenario scenario = generate_scenario(cfg);
  std::vector<Job> jobs;
  for (int n : elements) {
    for (const DesignMode& mode : modes) {
      jobs.push_back([&, n, mode] {
        SystemConfig point = cfg;
        point.num_elements = n;
        return solve_point(scenario, mode, point, n);
      });
    }
  }
  return run_jobs(jobs, workers);
}

SweepResult run_region_sweep(const SystemConfig& cfg, const std::vector<double>& widths,
                             const std::vector<DesignMode>& modes, int workers) {
  std::vector<Scenario> scenarios;
  std::vector<SystemConfig> configs;
  for (double width : widths) {
    SystemConfig point = cfg;
    point.waveguide_length = width;
    configs.push_back(point);
    scenarios.push_back(generate_scenario(point));
  }
  std::vector<Job> jobs;
  for (std::size_t w = 0; w < widths.size(); ++w)
    for (const DesignMode& mode : modes)
      jobs.push_back([&, w, mode] { return solve_point(scenarios[w], mode, configs[w], widths[w]); });
  return run_jobs(jobs, workers);
}

}  // namespace pass
