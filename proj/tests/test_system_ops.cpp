#include <doctest.h>

#include <Eigen/Dense>

#include "bnk/families.hpp"
#include "bnk/startsys.hpp"
#include "bnk/system_ops.hpp"

using namespace bnk;

TEST_CASE("squaring an already-square system is a pass-through") {
  PolySystem s = goursat_surface();
  SquaredSystem sq = square_system(s, 11);
  CHECK(sq.squared.polys.size() == 1);
  CHECK(sq.squared.polys[0] == s.polys[0]);
  CHECK((sq.mix - Eigen::MatrixXcd::Identity(1, 1)).norm() == 0.0);
}

TEST_CASE("squaring reduces an overdetermined curve to codim many rows") {
  PolySystem rnc = rational_normal_curve(4, 3);  // 6 quadrics, codim 3
  REQUIRE(rnc.polys.size() == 6);
  REQUIRE(rnc.codim() == 3);
  SquaredSystem sq = square_system(rnc, 5);
  CHECK(sq.squared.polys.size() == 3);
  CHECK(sq.squared.vars == rnc.vars);

  // row i of the squared system is exactly sum_j mix(i, j) * original_j
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXcd z(4);
    for (int i = 0; i < 4; ++i) z[i] = rng.complex_gauss();
    Eigen::VectorXcd orig = evaluate(rnc, z);
    Eigen::VectorXcd mixed = evaluate(sq.squared, z);
    CHECK((mixed - sq.mix * orig).norm() < 1e-12 * (1.0 + orig.norm()));
  }
}

TEST_CASE("squaring is seed-reproducible and seed-sensitive") {
  PolySystem rnc = rational_normal_curve(4, 3);
  SquaredSystem a = square_system(rnc, 5), b = square_system(rnc, 5), c = square_system(rnc, 6);
  CHECK((a.mix - b.mix).norm() == 0.0);
  CHECK((a.mix - c.mix).norm() > 1e-3);
}

TEST_CASE("diagonal change rescales coordinates consistently") {
  PolySystem s = two_oval_quartic();
  DiagonalChange dc = diagonal_change(s, 9);
  REQUIRE(dc.diag.size() == 2);
  for (double d : dc.diag) {
    CHECK(d >= 0.5);
    CHECK(d <= 2.0);
  }
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXcd z(2);
    z << rng.complex_gauss(), rng.complex_gauss();
    Eigen::VectorXcd dz(2);
    dz << dc.diag[0] * z[0], dc.diag[1] * z[1];
    CHECK(std::abs(evaluate(dc.system, z)[0] - evaluate(s, dz)[0]) < 1e-10);
  }
}

TEST_CASE("affine substitution evaluates as composition") {
  PolySystem s = ellipse_curve();
  Eigen::MatrixXcd m(2, 2);
  m << Cx(0.6, 0), Cx(-0.8, 0), Cx(0.8, 0), Cx(0.6, 0);
  Eigen::VectorXcd c(2);
  c << Cx(0.3, 0), Cx(-0.2, 0);
  PolySystem t = substitute_affine(s, m, c);
  Rng rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXcd z(2);
    z << rng.complex_gauss(), rng.complex_gauss();
    CHECK(std::abs(evaluate(t, z)[0] - evaluate(s, m * z + c)[0]) < 1e-12);
  }
}

TEST_CASE("relative residual vanishes on the variety and scales sensibly") {
  PolySystem s = unit_circle();
  Eigen::VectorXcd on(2), off(2);
  on << Cx(0.6, 0), Cx(0.8, 0);
  off << Cx(10.0, 0), Cx(0.0, 0);
  CHECK(relative_residual(s, on) < 1e-15);
  CHECK(relative_residual(s, off) > 0.1);
  // relative: far-out points do not blow up beyond O(1)
  CHECK(relative_residual(s, off) < 1.0);
}
