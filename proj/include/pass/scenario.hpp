#pragma once

#include <cstdint>
#include <vector>

#include "pass/config.hpp"
#include "pass/em_model.hpp"

namespace pass {

/// One coherence window: m frames of K users, fixed at creation so every
/// outer iteration sees the same samples.
struct Scenario {
  std::vector<UserFrame> frames;
  std::uint64_t seed = 0;
  double region_width = 0.0;  // D_x
  double region_depth = 0.0;  // D_y
};

/// SplitMix64 finalizer; used to derive one independent stream per frame.
std::uint64_t splitmix64(std::uint64_t x);

/// Users i.i.d. uniform on [0, D_x] x [-D_y/2, D_y/2] x {0}. Frame i draws
/// from its own mt19937_64 stream seeded by splitmix64(seed, i), and uniforms
/// are built from the top 53 bits, so output is identical across platforms.
Scenario generate_scenario(const SystemConfig& cfg);

}  // namespace pass
