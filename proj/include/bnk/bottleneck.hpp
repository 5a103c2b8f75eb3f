#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "bnk/startsys.hpp"
#include "bnk/system_ops.hpp"
#include "bnk/tracker.hpp"

namespace bnk {

struct BottleneckRunConfig {
  Cx gamma = Cx(0.0, 0.0);  // zero means: draw from the run seed
  std::optional<Eigen::VectorXcd> p0;
  bool symmetric = false;  // X = Y mode
  double diag_tol = 1e-6;
  double real_tol = 1e-6;
  double dedup_tol = 1e-6;
  double filter_tol = 1e-8;
  std::optional<Eigen::MatrixXd> projection;  // m x n matrix M
  TrackerConfig tracker;
  int threads = 0;
};

// A verified endpoint (x, y, v, w) of the main homotopy: the line through x
// and y is normal to the first variety at x and to the second at y.
struct BottleneckPair {
  Eigen::VectorXcd x, y, v, w;
  Cx sq_distance = Cx(0.0, 0.0);  // sum (x_i - y_i)^2, complex off the real locus
  double distance = 0.0;          // defined for real pairs only
  bool is_real = false;
  double residual_full = 0.0;  // relative residual on the unsquared systems
  double normality_residual = 0.0;
  PathStatus status_origin = PathStatus::Converged;
  int path_index = -1;
};

struct ClassifyCounts {
  int diagonal = 0;
  int divergent = 0;
  int singular = 0;
  int extraneous = 0;
};

struct ClassifyResult {
  std::vector<BottleneckPair> pairs;
  ClassifyCounts counts;
};

// Main homotopy in (x, y, v, w), N = 2n + a + b:
//   F(x) = 0
//   G(y) = 0
//   gamma t (x - p0) + (1 - t)(x - y) - (gamma t + 1 - t) J_F(x)^T v = 0
//   gamma t (y - p0) + (1 - t)(y - x) - (gamma t + 1 - t) J_G(y)^T w = 0
// cfg.gamma must be resolved (unit modulus) and cfg.p0 present.
HomotopyProblem build_main_homotopy(const SquaredSystem& f, const SquaredSystem& g,
                                    const BottleneckRunConfig& cfg);

// Variant with the normal blocks left-multiplied by M^T M (cfg.projection).
HomotopyProblem build_projected_homotopy(const SquaredSystem& f, const SquaredSystem& g,
                                         const BottleneckRunConfig& cfg);

// Non-symmetric: all |S1| * |S2| ordered pairs. Symmetric: unordered pairs
// with distinct members (the diagonal pairs track constant non-isolated
// paths and are discarded).
std::vector<Eigen::VectorXcd> assemble_start_points(const NormalLocusResult& s1,
                                                    const NormalLocusResult& s2, bool symmetric);

// Buckets endpoints into pairs / diagonal / divergent / singular /
// extraneous, verifies normality against the unsquared systems and
// deduplicates (folding (x,y) ~ (y,x) in symmetric mode).
ClassifyResult classify_endpoints(const std::vector<PathOutcome>& outcomes,
                                  const PolySystem& f_hat, const PolySystem& g_hat,
                                  const BottleneckRunConfig& cfg);

// Marks real pairs in place and returns them. A pair is real iff every
// coordinate of (x, y) has |Im| <= real_tol * (1 + |Re|); real pairs get
// distance computed from the real parts.
std::vector<BottleneckPair> filter_real(std::vector<BottleneckPair>& pairs, double real_tol);

struct MinDistanceResult {
  bool found = false;
  double distance = 0.0;
  int pair_index = -1;  // into the list that was passed in
};

// Minimum distance over real pairs; when component labels are given (one
// (label_x, label_y) per pair) only pairs joining different components are
// eligible.
MinDistanceResult min_bottleneck_distance(
    const std::vector<BottleneckPair>& real_pairs,
    const std::optional<std::vector<std::pair<int, int>>>& labels = {});

struct StageTiming {
  double start_solve = 0.0;
  double tracking = 0.0;
  double classify = 0.0;
  double total = 0.0;
};

struct RunReport {
  NormalLocusResult locus_x, locus_y;
  std::vector<BottleneckPair> pairs;  // deduplicated, is_real marked
  ClassifyCounts counts;
  int paths = 0;
  int real_pairs = 0;
  Cx gamma = Cx(0.0, 0.0);
  Eigen::VectorXcd p0;
  std::uint64_t seed = 0;
  bool symmetric = false;
  bool bound_violated = false;  // pairs exceed EDD(X) * EDD(Y)
  StageTiming timing;
};

// Full pipeline: square both inputs, solve the normal loci, assemble starts,
// track the main homotopy, classify and filter.
RunReport run_bottlenecks(const PolySystem& spec_x, const PolySystem& spec_y,
                          const BottleneckRunConfig& cfg, std::uint64_t seed);

}  // namespace bnk
