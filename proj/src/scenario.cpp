#include "pass/scenario.hpp"

#include <random>

namespace pass {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

Scenario generate_scenario(const SystemConfig& cfg) {
  cfg.validate();
  Scenario scenario;
  scenario.seed = cfg.rng_seed;
  scenario.region_width = cfg.region_width();
  scenario.region_depth = cfg.region_depth;

  const double gamma = cfg.link_constant();
  for (int i = 0; i < cfg.samples_per_window; ++i) {
    std::mt19937_64 gen(splitmix64(cfg.rng_seed ^ splitmix64(static_cast<std::uint64_t>(i))));
    UserFrame frame;
    frame.positions.resize(3, cfg.num_users);
    for (int k = 0; k < cfg.num_users; ++k) {
      const double u = unit_uniform(gen);
      const double v = unit_uniform(gen);
      frame.positions.col(k) << u * scenario.region_width,
          (v - 0.5) * scenario.region_depth, 0.0;
    }
    frame.gamma = Vector::Constant(cfg.num_users, gamma);
    scenario.frames.push_back(std::move(frame));
  }
  return scenario;
}

}  // namespace pass
