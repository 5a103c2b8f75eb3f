#include <doctest.h>

#include <Eigen/Dense>
#include <vector>

#include "bnk/poly.hpp"
#include "bnk/rng.hpp"

using namespace bnk;

namespace {

Poly circle_poly() {
  // x^2 + y^2 - 1
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  return x * x + y * y - Poly::constant(2, Cx(1.0, 0.0));
}

}  // namespace

TEST_CASE("constants and variables evaluate") {
  Poly c = Poly::constant(3, Cx(2.5, -1.0));
  Poly x1 = Poly::variable(3, 1);
  std::vector<Cx> pt = {Cx(1, 0), Cx(3, 2), Cx(0, 1)};
  CHECK(c.eval(pt) == Cx(2.5, -1.0));
  CHECK(x1.eval(pt) == Cx(3, 2));
  CHECK(c.degree() == 0);
  CHECK(x1.degree() == 1);
}

TEST_CASE("ring operations match pointwise arithmetic") {
  Rng rng(42);
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  Poly p = x * x * y - Cx(3.0, 0.0) * y + Poly::constant(2, Cx(0.0, 1.0));
  Poly q = y * y + x * Cx(2.0, -1.0);
  for (int k = 0; k < 10; ++k) {
    std::vector<Cx> pt = {rng.complex_gauss(), rng.complex_gauss()};
    Cx pv = pt[0] * pt[0] * pt[1] - 3.0 * pt[1] + Cx(0, 1);
    Cx qv = pt[1] * pt[1] + Cx(2, -1) * pt[0];
    CHECK(std::abs((p + q).eval(pt) - (pv + qv)) < 1e-12);
    CHECK(std::abs((p - q).eval(pt) - (pv - qv)) < 1e-12);
    CHECK(std::abs((p * q).eval(pt) - pv * qv) < 1e-10);
  }
}

TEST_CASE("binomial square expands to three sorted terms") {
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  Poly p = (x + y) * (x + y);
  REQUIRE(p.terms().size() == 3);
  // graded-lex: x^2, x*y, y^2
  CHECK(p.terms()[0].exps == std::vector<int>{2, 0});
  CHECK(p.terms()[1].exps == std::vector<int>{1, 1});
  CHECK(p.terms()[2].exps == std::vector<int>{0, 2});
  CHECK(p.terms()[1].coeff == Cx(2.0, 0.0));
}

TEST_CASE("cancellation drops zero terms") {
  Poly x = Poly::variable(1, 0);
  Poly p = x - x;
  CHECK(p.is_zero());
  CHECK(p.degree() == 0);
}

TEST_CASE("derivative agrees with finite differences") {
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  Poly p = x * x * x * y + y * y - x * Cx(2.0, 1.0);
  Rng rng(7);
  for (int var = 0; var < 2; ++var) {
    Poly d = p.derivative(var);
    for (int k = 0; k < 5; ++k) {
      std::vector<Cx> pt = {rng.complex_gauss(), rng.complex_gauss()};
      std::vector<Cx> hi = pt, lo = pt;
      double h = 1e-6;
      hi[static_cast<size_t>(var)] += h;
      lo[static_cast<size_t>(var)] -= h;
      Cx fd = (p.eval(hi) - p.eval(lo)) / (2.0 * h);
      CHECK(std::abs(d.eval(pt) - fd) < 1e-6 * (1.0 + std::abs(fd)));
    }
  }
}

TEST_CASE("embedded keeps values under coordinate extension") {
  Poly p = circle_poly();
  Poly e = p.embedded(5, 2);
  std::vector<Cx> pt = {Cx(9, 0), Cx(9, 0), Cx(0.6, 0), Cx(0.8, 0), Cx(9, 0)};
  CHECK(std::abs(e.eval(pt)) < 1e-14);
  CHECK(e.num_vars() == 5);
  CHECK(e.degree() == 2);
}

TEST_CASE("substitute composes polynomials") {
  // p(x, y) = x * y; substitute x -> u + v, y -> u - v gives u^2 - v^2
  Poly p = Poly::variable(2, 0) * Poly::variable(2, 1);
  std::vector<Poly> images = {Poly::variable(2, 0) + Poly::variable(2, 1),
                              Poly::variable(2, 0) - Poly::variable(2, 1)};
  Poly q = p.substitute(images);
  Poly expect =
      Poly::variable(2, 0) * Poly::variable(2, 0) - Poly::variable(2, 1) * Poly::variable(2, 1);
  CHECK(q == expect);
}

TEST_CASE("degree_in sees only masked variables") {
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  Poly p = x * x * y;
  CHECK(p.degree_in({1, 0}) == 2);
  CHECK(p.degree_in({0, 1}) == 1);
  CHECK(p.degree() == 3);
}

TEST_CASE("system evaluation and jacobian are consistent") {
  PolySystem s;
  s.vars = {"x", "y"};
  s.declared_dim = 1;
  s.polys = {circle_poly()};
  Eigen::VectorXcd z(2);
  z << Cx(0.3, 0.1), Cx(-1.2, 0.4);
  Eigen::VectorXcd vals = evaluate(s, z);
  CHECK(std::abs(vals[0] - (z[0] * z[0] + z[1] * z[1] - 1.0)) < 1e-14);
  Eigen::MatrixXcd j = jacobian(s, z);
  CHECK(std::abs(j(0, 0) - 2.0 * z[0]) < 1e-14);
  CHECK(std::abs(j(0, 1) - 2.0 * z[1]) < 1e-14);

  SystemEval eval(s);
  Eigen::VectorXcd v2(1);
  Eigen::MatrixXcd j2(1, 2);
  eval.values(z, v2);
  eval.jacobian_at(z, j2);
  CHECK((v2 - vals).norm() < 1e-15);
  CHECK((j2 - j).norm() < 1e-15);
}
