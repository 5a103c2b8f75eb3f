#include <doctest.h>

#include "bnk/families.hpp"
#include "bnk/multihom.hpp"
#include "bnk/startsys.hpp"
#include "bnk/system_ops.hpp"

using namespace bnk;

namespace {

// Normal locus system (x-group, v-group) of a variety given by spec.
PolySystem locus_target(const PolySystem& spec, std::uint64_t seed) {
  SquaredSystem sq = square_system(spec, seed);
  Rng rng = Rng(seed).derive("p0-test");
  Eigen::VectorXcd p0(spec.ambient_dim());
  for (int i = 0; i < spec.ambient_dim(); ++i) p0[i] = rng.complex_gauss();
  return build_normal_locus_system(sq, p0);
}

long long locus_count(const PolySystem& spec, std::uint64_t seed) {
  PolySystem target = locus_target(spec, seed);
  VariableGroups g = VariableGroups::blocks({spec.ambient_dim(), spec.codim()});
  return multihomogeneous_count(target, g);
}

}  // namespace

TEST_CASE("blocks partition consecutively") {
  VariableGroups g = VariableGroups::blocks({2, 3});
  REQUIRE(g.groups.size() == 2);
  CHECK(g.groups[0] == std::vector<int>{0, 1});
  CHECK(g.groups[1] == std::vector<int>{2, 3, 4});
}

TEST_CASE("multidegree table reads group degrees") {
  // p = x0^2 * v0 over groups {x0, x1}, {v0}
  PolySystem s;
  s.vars = {"x0", "x1", "v0"};
  s.declared_dim = 0;
  s.polys = {Poly::variable(3, 0) * Poly::variable(3, 0) * Poly::variable(3, 2)};
  auto table = multidegree_table(s, VariableGroups::blocks({2, 1}));
  REQUIRE(table.size() == 1);
  CHECK(table[0] == std::vector<int>{2, 1});
}

TEST_CASE("one group reduces to the Bezout product") {
  PolySystem s;
  s.vars = {"x", "y"};
  s.declared_dim = 0;
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  s.polys = {x * x + y - Poly::constant(2, Cx(1, 0)), x * y * y + x};
  CHECK(multihomogeneous_count(s, VariableGroups::blocks({2})) == 6);
}

TEST_CASE("normal locus multihomogeneous counts match the known path budgets") {
  // hand-expanded coefficients of prod_i (sum_g deg_g z_g) at z_x^n z_v^a
  CHECK(locus_count(ellipse_curve(), 1) == 4);
  CHECK(locus_count(random_hypersurface(3, 2, 11), 2) == 6);    // quadric surface
  CHECK(locus_count(random_hypersurface(3, 3, 21), 3) == 36);   // cubic surface
  CHECK(locus_count(rational_normal_curve(3, 31), 4) == 12);    // rnc in C^3
  CHECK(locus_count(goursat_surface(), 5) == 108);
}

TEST_CASE("grouped count never exceeds the total-degree bound") {
  PolySystem target = locus_target(rational_normal_curve(3, 31), 4);
  long long grouped =
      multihomogeneous_count(target, VariableGroups::blocks({3, 2}));
  long long total = multihomogeneous_count(
      target, VariableGroups::blocks({static_cast<int>(target.vars.size())}));
  CHECK(grouped <= total);
}

TEST_CASE("product start solves its system, one point per admissible selection") {
  PolySystem target = locus_target(rational_normal_curve(3, 31), 4);
  VariableGroups g = VariableGroups::blocks({3, 2});
  Rng rng(99);
  ProductStart start = build_product_start(target, g, rng);
  CHECK(static_cast<long long>(start.points.size()) == multihomogeneous_count(target, g));
  for (const Eigen::VectorXcd& z : start.points)
    CHECK(evaluate(start.system, z).lpNorm<Eigen::Infinity>() < 1e-10);
  // start system multidegrees match the target's
  auto td = multidegree_table(target, g);
  auto sd = multidegree_table(start.system, g);
  CHECK(td == sd);
}
