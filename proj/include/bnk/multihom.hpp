#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "bnk/poly.hpp"
#include "bnk/rng.hpp"

namespace bnk {

// Partition of the variable indices into disjoint groups covering all
// variables.
struct VariableGroups {
  std::vector<std::vector<int>> groups;

  // groups = consecutive blocks of the given sizes
  static VariableGroups blocks(const std::vector<int>& sizes);
};

// degrees(i, g) = degree of polys[i] in the variables of group g
std::vector<std::vector<int>> multidegree_table(const PolySystem& s, const VariableGroups& g);

// Multihomogeneous Bezout number of a square system: the coefficient of
// prod_g z_g^{|g|} in prod_i (sum_g deg_g(p_i) z_g), computed by a forward
// expansion over group degree allocations.
long long multihomogeneous_count(const PolySystem& s, const VariableGroups& g);

// Product start system matching the multidegree structure of a square target:
// row i is a product of random affine-linear forms, deg_g(target_i) many in
// the variables of group g. Start points are obtained group-wise from linear
// solves, one per admissible factor selection; their number equals the
// multihomogeneous count.
struct ProductStart {
  PolySystem system;
  std::vector<Eigen::VectorXcd> points;
};

ProductStart build_product_start(const PolySystem& target, const VariableGroups& g, Rng& rng);

}  // namespace bnk
