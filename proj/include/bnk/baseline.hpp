#pragma once

#include <cstdint>

#include "bnk/bottleneck.hpp"

namespace bnk {

// Direct multihomogeneous solve of the Lagrange system
//   F(x) = 0, G(y) = 0, (x - y) = J_F(x)^T v, (y - x) = J_G(y)^T w
// with the multiplier groups homogenized and pinned to random affine patches,
// tracked from a product start system over groups {x,y}, {v}, {w}. Serves as
// benchmark and as an oracle independent of the two-stage pipeline.
struct DirectSolveReport {
  int paths = 0;  // equals the multihomogeneous count of the target
  std::vector<BottleneckPair> pairs;
  ClassifyCounts counts;
  int real_pairs = 0;
  double wall_time = 0.0;
};

DirectSolveReport solve_direct(const SquaredSystem& f, const SquaredSystem& g,
                               const BottleneckRunConfig& cfg, std::uint64_t seed);

}  // namespace bnk
