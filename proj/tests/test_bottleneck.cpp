#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "bnk/bottleneck.hpp"
#include "bnk/families.hpp"
#include "bnk/system_ops.hpp"

using namespace bnk;

namespace {

std::vector<double> sorted_real_distances(const RunReport& r) {
  std::vector<double> d;
  for (const BottleneckPair& p : r.pairs)
    if (p.is_real) d.push_back(p.distance);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("ellipse bottlenecks: the two axes, to 1e-8") {
  PolySystem e = ellipse_curve();
  BottleneckRunConfig cfg;
  cfg.symmetric = true;
  RunReport r = run_bottlenecks(e, e, cfg, 7);
  REQUIRE(r.real_pairs == 2);
  auto d = sorted_real_distances(r);
  REQUIRE(d.size() == 2);
  CHECK(std::abs(d[0] - 2.0) < 1e-8);
  CHECK(std::abs(d[1] - 4.0) < 1e-8);
  for (const BottleneckPair& p : r.pairs) {
    CHECK(p.residual_full <= 1e-8);
    CHECK(p.normality_residual <= 1e-8);
  }
  // the long bottleneck joins (-2, 0) and (2, 0)
  for (const BottleneckPair& p : r.pairs) {
    if (!p.is_real || std::abs(p.distance - 4.0) > 1e-6) continue;
    CHECK(std::abs(std::abs(p.x[0].real()) - 2.0) < 1e-8);
    CHECK(std::abs(p.x[1].real()) < 1e-8);
  }
}

TEST_CASE("symmetric mode demands identical inputs") {
  BottleneckRunConfig cfg;
  cfg.symmetric = true;
  CHECK_THROWS_AS(run_bottlenecks(ellipse_curve(), unit_circle(), cfg, 1),
                  std::invalid_argument);
}

TEST_CASE("start point assembly counts") {
  NormalLocusResult a, b;
  auto mk = [](double v) {
    NormalLocusPoint p;
    p.x = Eigen::VectorXcd::Constant(2, Cx(v, 0));
    p.v = Eigen::VectorXcd::Constant(1, Cx(v, 0));
    return p;
  };
  for (int i = 0; i < 4; ++i) a.points.push_back(mk(i));
  for (int i = 0; i < 3; ++i) b.points.push_back(mk(10 + i));
  CHECK(assemble_start_points(a, b, false).size() == 12);
  CHECK(assemble_start_points(a, a, true).size() == 6);  // C(4,2)
}

TEST_CASE("filter_real marks pairs and computes distances") {
  BottleneckPair real_pair, complex_pair;
  real_pair.x = Eigen::VectorXcd::Zero(2);
  real_pair.y = Eigen::VectorXcd::Zero(2);
  real_pair.y[0] = Cx(3.0, 1e-9);
  complex_pair.x = Eigen::VectorXcd::Zero(2);
  complex_pair.y = Eigen::VectorXcd::Zero(2);
  complex_pair.y[1] = Cx(1.0, 0.5);
  std::vector<BottleneckPair> pairs = {real_pair, complex_pair};
  auto reals = filter_real(pairs, 1e-6);
  REQUIRE(reals.size() == 1);
  CHECK(pairs[0].is_real);
  CHECK(!pairs[1].is_real);
  CHECK(std::abs(reals[0].distance - 3.0) < 1e-9);
}

TEST_CASE("minimum distance respects component labels") {
  std::vector<BottleneckPair> pairs(2);
  pairs[0].distance = 1.0;
  pairs[1].distance = 2.0;
  MinDistanceResult overall = min_bottleneck_distance(pairs);
  CHECK(overall.found);
  CHECK(overall.distance == 1.0);
  // the short pair is intra-component, so the cross-component minimum is 2
  std::vector<std::pair<int, int>> labels = {{0, 0}, {0, 1}};
  MinDistanceResult cross = min_bottleneck_distance(pairs, labels);
  CHECK(cross.found);
  CHECK(cross.distance == 2.0);
  CHECK(cross.pair_index == 1);
  CHECK_THROWS_AS(
      min_bottleneck_distance(pairs, std::vector<std::pair<int, int>>{{0, 0}}),
      std::invalid_argument);
}

TEST_CASE("bottlenecks are equivariant under rigid motions") {
  // rotate the ellipse by theta and translate by b; pairs must move along
  double theta = 0.7;
  Eigen::Matrix2d rot;
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  Eigen::Vector2d b(0.3, -0.4);
  // variety {z : p(R^T (z - b)) = 0} via the substitution x -> R^T z - R^T b
  Eigen::MatrixXcd m = rot.transpose().cast<Cx>();
  Eigen::VectorXcd c = (-rot.transpose() * b).cast<Cx>();
  PolySystem moved = substitute_affine(ellipse_curve(), m, c);

  BottleneckRunConfig cfg;
  cfg.symmetric = true;
  RunReport base = run_bottlenecks(ellipse_curve(), ellipse_curve(), cfg, 7);
  RunReport turned = run_bottlenecks(moved, moved, cfg, 11);
  REQUIRE(base.real_pairs == turned.real_pairs);
  auto d0 = sorted_real_distances(base);
  auto d1 = sorted_real_distances(turned);
  REQUIRE(d0.size() == d1.size());
  for (size_t i = 0; i < d0.size(); ++i) CHECK(std::abs(d0[i] - d1[i]) < 1e-8);
  // endpoints map to endpoints
  for (const BottleneckPair& p : base.pairs) {
    if (!p.is_real) continue;
    Eigen::Vector2d fx = rot * p.x.real() + b, fy = rot * p.y.real() + b;
    double best = 1e300;
    for (const BottleneckPair& q : turned.pairs) {
      if (!q.is_real) continue;
      Eigen::Vector2d qx = q.x.real(), qy = q.y.real();
      best = std::min(best, std::min((fx - qx).norm() + (fy - qy).norm(),
                                     (fx - qy).norm() + (fy - qx).norm()));
    }
    CHECK(best < 1e-8);
  }
}

TEST_CASE("classification deduplicates mirrored endpoints in symmetric mode") {
  // build two outcomes that are the same pair with x and y exchanged
  PolySystem e = ellipse_curve();
  Eigen::VectorXcd z1(6), z2(6);
  // pair (2,0)-(-2,0) with multipliers solving (x - y) = J^T v: J = (x/2, 2y)
  // at (2,0): J = (1, 0), x - y = (4, 0) => v = 4; at (-2,0): w = 4
  z1 << Cx(2, 0), Cx(0, 0), Cx(-2, 0), Cx(0, 0), Cx(4, 0), Cx(4, 0);
  z2 << Cx(-2, 0), Cx(0, 0), Cx(2, 0), Cx(0, 0), Cx(-4, 0), Cx(-4, 0);
  std::vector<PathOutcome> outs(2);
  outs[0].status = PathStatus::Converged;
  outs[0].endpoint = z1;
  outs[1].status = PathStatus::Converged;
  outs[1].endpoint = z2;
  BottleneckRunConfig cfg;
  cfg.symmetric = true;
  ClassifyResult cls = classify_endpoints(outs, e, e, cfg);
  CHECK(cls.pairs.size() == 1);
}
