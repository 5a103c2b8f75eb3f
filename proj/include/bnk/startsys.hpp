#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "bnk/system_ops.hpp"
#include "bnk/tracker.hpp"

namespace bnk {

struct NormalLocusPoint {
  Eigen::VectorXcd x;
  Eigen::VectorXcd v;  // multiplier coordinates
  double residual = 0.0;
};

// The start-point set of one variety: all (x, v) with F(x) = 0 and
// (x - p0) = J_F(x)^T v. Its size is the empirical Euclidean distance degree.
struct NormalLocusResult {
  std::vector<NormalLocusPoint> points;
  int edd = 0;
  int paths_followed = 0;
  int divergent = 0;
  Eigen::VectorXcd p0;
  std::uint64_t seed = 0;
  bool zero_warning = false;  // no finite solutions found
};

struct NormalLocusOptions {
  double filter_tol = 1e-8;  // relative residual on the unsquared equations
  double dedup_tol = 1e-6;
  std::optional<Eigen::MatrixXd> projection;  // m x n matrix M; normal block
                                              // becomes M^T M (x - p0) = f
  int threads = 0;
};

// Square system of n + a equations in (x, v): F(x) = 0 and
// (x - p0) - J_F(x)^T v = 0 (the normal block left-multiplied by M^T M when a
// projection is given).
PolySystem build_normal_locus_system(const SquaredSystem& f, const Eigen::VectorXcd& p0,
                                     const std::optional<Eigen::MatrixXd>& projection = {});

// Solves the normal locus of the variety of `spec` with respect to p0 (drawn
// from the seed when absent) by a gamma-trick multihomogeneous homotopy with
// variable groups {x}, {v}.
NormalLocusResult solve_normal_locus(const PolySystem& spec,
                                     const std::optional<Eigen::VectorXcd>& p0,
                                     const TrackerConfig& cfg, std::uint64_t seed,
                                     const NormalLocusOptions& opts = {});

// Relative magnitude scale of p at x: sum of |coeff| * prod |x_i|^e, used to
// turn residuals into relative residuals.
double poly_magnitude(const Poly& p, const Eigen::VectorXcd& x);
double relative_residual(const PolySystem& s, const Eigen::VectorXcd& x);

}  // namespace bnk
