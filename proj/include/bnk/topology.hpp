#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bnk/poly.hpp"
#include "bnk/tracker.hpp"

namespace bnk {

// Per-axis sampling window [lo_i, hi_i].
struct Box {
  std::vector<std::pair<double, double>> intervals;
};

struct SampleCloud {
  std::vector<Eigen::VectorXd> points;
  std::string source;
  double residual_bound = 0.0;  // worst relative residual over the cloud
  double max_gap = 0.0;         // largest nearest-neighbor distance (density diagnostic)
};

struct SampleOptions {
  double residual_tol = 1e-8;
  double real_tol = 1e-6;
  int threads = 0;
};

// Slices a curve (declared_dim 1) with axis-aligned hyperplanes x_k = c on a
// grid of the given spacing, solving each slice by a total-degree gamma
// homotopy. Real solutions inside the box are kept, deduplicated at
// spacing / 10. An empty cloud is a valid result, not an error.
SampleCloud sample_curve(const PolySystem& spec, const Box& box, double spacing,
                         const TrackerConfig& cfg, std::uint64_t seed,
                         const SampleOptions& opts = {});

struct RipsGraph {
  double radius = 0.0;
  std::vector<std::pair<int, int>> edges;  // i < j, 0 < dist < 2 * radius
  std::vector<int> component_labels;
};

struct RipsComponents {
  int count = 0;
  std::vector<int> labels;
  RipsGraph graph;
};

// Connected components of the Vietoris-Rips graph at parameter r via
// union-find. Empty cloud gives count 0.
RipsComponents rips_components(const SampleCloud& cloud, double r);

}  // namespace bnk
