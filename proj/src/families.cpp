#include "bnk/families.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bnk/rng.hpp"
#include "bnk/system_ops.hpp"

namespace bnk {

namespace {

Poly var2(int i) { return Poly::variable(2, i); }

}  // namespace

PolySystem unit_circle() {
  PolySystem s;
  s.vars = {"x", "y"};
  s.declared_dim = 1;
  s.polys.push_back(var2(0) * var2(0) + var2(1) * var2(1) - Poly::constant(2, 1.0));
  return s;
}

PolySystem ellipse_curve() {
  PolySystem s;
  s.vars = {"x", "y"};
  s.declared_dim = 1;
  s.polys.push_back(var2(0) * var2(0) * Cx(0.25, 0.0) + var2(1) * var2(1) -
                    Poly::constant(2, 1.0));
  return s;
}

PolySystem two_oval_quartic() {
  PolySystem s;
  s.vars = {"x", "y"};
  s.declared_dim = 1;
  Poly x2 = var2(0) * var2(0);
  Poly y2 = var2(1) * var2(1);
  s.polys.push_back((x2 - Poly::constant(2, 1.0)) * (x2 - Poly::constant(2, 4.0)) + y2 * y2 + y2);
  return s;
}

PolySystem goursat_surface() {
  PolySystem s;
  s.vars = {"x", "y", "z"};
  s.declared_dim = 2;
  Poly x = Poly::variable(3, 0), y = Poly::variable(3, 1), z = Poly::variable(3, 2);
  Poly q = x * x + y * y + z * z;
  Poly p = x * x * (x * x) + y * y * (y * y) + z * z * (z * z) + q * q - Cx(2.0, 0.0) * q -
           Poly::constant(3, 3.0);
  s.polys.push_back(std::move(p));
  return s;
}

PolySystem random_hypersurface(int n, int degree, std::uint64_t seed) {
  if (n < 1 || degree < 1) throw std::invalid_argument("bad hypersurface parameters");
  Rng rng = Rng(seed).derive("hypersurface");
  PolySystem s;
  if (n <= 3) {
    const char* names[] = {"x", "y", "z"};
    for (int i = 0; i < n; ++i) s.vars.push_back(names[i]);
  } else {
    for (int i = 0; i < n; ++i) s.vars.push_back("x" + std::to_string(i + 1));
  }
  s.declared_dim = n - 1;

  Poly p(n);
  std::vector<int> exps(static_cast<size_t>(n), 0);
  // enumerate all monomials of total degree <= degree
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == n) {
      p.add_term(exps, Cx(rng.gauss(), 0.0));
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      exps[static_cast<size_t>(pos)] = e;
      self(self, pos + 1, remaining - e);
    }
    exps[static_cast<size_t>(pos)] = 0;
  };
  rec(rec, 0, degree);
  s.polys.push_back(std::move(p));
  return s;
}

PolySystem rational_normal_curve(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("rational normal curve needs n >= 3");
  Rng rng = Rng(seed).derive("rnc");
  // 2 x n matrix of random degree-one polynomials
  std::vector<std::vector<Poly>> m(2, std::vector<Poly>(static_cast<size_t>(n)));
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < n; ++c) {
      Poly l = Poly::constant(n, Cx(rng.gauss(), 0.0));
      for (int i = 0; i < n; ++i) l += Poly::variable(n, i) * Cx(rng.gauss(), 0.0);
      m[static_cast<size_t>(r)][static_cast<size_t>(c)] = std::move(l);
    }
  PolySystem s;
  for (int i = 0; i < n; ++i) s.vars.push_back("x" + std::to_string(i + 1));
  s.declared_dim = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      s.polys.push_back(m[0][static_cast<size_t>(i)] * m[1][static_cast<size_t>(j)] -
                        m[0][static_cast<size_t>(j)] * m[1][static_cast<size_t>(i)]);
  return s;
}

PolySystem cycloheptane_curve(std::uint64_t seed, bool rescale) {
  constexpr int nv = 10;
  double alpha = 115.0 * std::numbers::pi / 180.0;
  double c = std::cos(alpha), sn = std::sin(alpha);

  using Atom = std::array<Poly, 3>;
  auto fixed = [](double x, double y, double z) {
    return Atom{Poly::constant(nv, Cx(x, 0.0)), Poly::constant(nv, Cx(y, 0.0)),
                Poly::constant(nv, Cx(z, 0.0))};
  };
  // rigid motions removed: p1, p2, p3 pinned consistently with the
  // constraints, the two linear angle conditions (at p3 and p1) solved for
  // p4_y and p7_x, leaving ten coordinates
  Atom p1 = fixed(0.0, 0.0, 0.0);
  Atom p2 = fixed(1.0, 0.0, 0.0);
  Atom p3 = fixed(1.0 - c, sn, 0.0);
  Atom p4{Poly::variable(nv, 0),
          Poly::constant(nv, Cx(sn - c / sn * (2.0 - c), 0.0)) +
              Poly::variable(nv, 0) * Cx(c / sn, 0.0),
          Poly::variable(nv, 1)};
  Atom p5{Poly::variable(nv, 2), Poly::variable(nv, 3), Poly::variable(nv, 4)};
  Atom p6{Poly::variable(nv, 5), Poly::variable(nv, 6), Poly::variable(nv, 7)};
  Atom p7{Poly::constant(nv, Cx(c, 0.0)), Poly::variable(nv, 8), Poly::variable(nv, 9)};

  auto diff = [](const Atom& a, const Atom& b) {
    return Atom{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
  };
  auto dot = [](const Atom& a, const Atom& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  };

  PolySystem s;
  for (int i = 0; i < nv; ++i) s.vars.push_back("q" + std::to_string(i + 1));
  s.declared_dim = 1;
  std::array<Atom, 7> ring = {p1, p2, p3, p4, p5, p6, p7};
  // unit bond lengths along edges touching a free atom
  for (int i = 2; i < 7; ++i) {
    Atom d = diff(ring[static_cast<size_t>((i + 1) % 7)], ring[static_cast<size_t>(i)]);
    s.polys.push_back(dot(d, d) - Poly::constant(nv, 1.0));
  }
  // bond angle 115 degrees at the free atoms (the conditions at p3 and p1
  // were used up eliminating p4_y and p7_x)
  for (int i = 3; i < 7; ++i) {
    Atom u = diff(ring[static_cast<size_t>(i - 1)], ring[static_cast<size_t>(i)]);
    Atom v = diff(ring[static_cast<size_t>((i + 1) % 7)], ring[static_cast<size_t>(i)]);
    s.polys.push_back(dot(u, v) - Poly::constant(nv, Cx(c, 0.0)));
  }

  if (rescale) return diagonal_change(s, Rng(seed).derive("cyclo-rescale").seed()).system;
  return s;
}

}  // namespace bnk
