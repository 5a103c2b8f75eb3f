#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "bnk/poly.hpp"
#include "bnk/rng.hpp"

namespace bnk {

// An over-determined system together with the square reduction used in its
// place. squared.polys[i] is exactly sum_j mix(i,j) * original.polys[j].
struct SquaredSystem {
  PolySystem original;
  PolySystem squared;
  Eigen::MatrixXcd mix;
  std::uint64_t seed = 0;

  int ambient_dim() const { return original.ambient_dim(); }
  int codim() const { return original.codim(); }
};

// Replaces r >= codim defining equations by codim general linear combinations
// with complex Gaussian coefficients. Pass-through (identity mix) when the
// input is already square.
SquaredSystem square_system(const PolySystem& s, std::uint64_t seed);

struct DiagonalChange {
  PolySystem system;
  std::vector<double> diag;
};

// Substitutes x_i -> d_i * x_i with random real d_i in [0.5, 2].
DiagonalChange diagonal_change(const PolySystem& s, std::uint64_t seed);

// Polynomials of the image variety under z -> A z + b, i.e. each p is
// replaced by p(A^{-1}(z - b)) expressed via the provided inverse map:
// callers pass the substitution x -> M x + c directly.
PolySystem substitute_affine(const PolySystem& s, const Eigen::MatrixXcd& m,
                             const Eigen::VectorXcd& c);

}  // namespace bnk
