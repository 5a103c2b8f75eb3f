#include "bnk/system_ops.hpp"

#include <stdexcept>

namespace bnk {

SquaredSystem square_system(const PolySystem& s, std::uint64_t seed) {
  int a = s.codim();
  int r = static_cast<int>(s.polys.size());
  if (a < 1 || a > s.ambient_dim()) throw std::invalid_argument("invalid codimension");
  if (r < a) throw std::invalid_argument("fewer equations than the codimension");

  SquaredSystem out;
  out.original = s;
  out.seed = seed;
  if (r == a) {
    out.squared = s;
    out.mix = Eigen::MatrixXcd::Identity(a, r);
    return out;
  }
  Rng rng = Rng(seed).derive("squaring");
  out.mix.resize(a, r);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < r; ++j) out.mix(i, j) = rng.complex_gauss();

  out.squared.vars = s.vars;
  out.squared.declared_dim = s.declared_dim;
  for (int i = 0; i < a; ++i) {
    Poly p(s.ambient_dim());
    for (int j = 0; j < r; ++j) p += s.polys[j] * out.mix(i, j);
    out.squared.polys.push_back(std::move(p));
  }
  return out;
}

DiagonalChange diagonal_change(const PolySystem& s, std::uint64_t seed) {
  Rng rng = Rng(seed).derive("diagonal");
  int n = s.ambient_dim();
  DiagonalChange out;
  out.diag.resize(n);
  for (int i = 0; i < n; ++i) out.diag[i] = rng.uniform(0.5, 2.0);

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = out.diag[i];
  out.system = substitute_affine(s, m, Eigen::VectorXcd::Zero(n));
  return out;
}

PolySystem substitute_affine(const PolySystem& s, const Eigen::MatrixXcd& m,
                             const Eigen::VectorXcd& c) {
  int n = s.ambient_dim();
  if (m.rows() != n || m.cols() != n || c.size() != n)
    throw std::invalid_argument("substitute_affine: shape mismatch");
  std::vector<Poly> images;
  images.reserve(n);
  for (int i = 0; i < n; ++i) {
    Poly im = Poly::constant(n, c[i]);
    for (int j = 0; j < n; ++j)
      if (m(i, j) != Cx(0.0, 0.0)) im += Poly::variable(n, j) * m(i, j);
    images.push_back(std::move(im));
  }
  PolySystem out;
  out.vars = s.vars;
  out.declared_dim = s.declared_dim;
  for (const Poly& p : s.polys) out.polys.push_back(p.substitute(images));
  return out;
}

}  // namespace bnk
