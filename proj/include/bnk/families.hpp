#pragma once

#include <cstdint>

#include "bnk/poly.hpp"

namespace bnk {

// Built-in benchmark inputs used by the bench subcommand and the test suite.

PolySystem unit_circle();       // x^2 + y^2 - 1
PolySystem ellipse_curve();     // x^2/4 + y^2 - 1
PolySystem two_oval_quartic();  // (x^2 - 1)(x^2 - 4) + y^4 + y^2
PolySystem goursat_surface();   // x^4+y^4+z^4+(x^2+y^2+z^2)^2-2(x^2+y^2+z^2)-3

// Dense degree-d hypersurface in C^n with standard Gaussian real coefficients.
PolySystem random_hypersurface(int n, int degree, std::uint64_t seed);

// Rational normal curve in C^n: 2x2 minors of a 2xn matrix of random degree
// one polynomials. Overdetermined for n > 3 (C(n,2) quadrics, codim n-1).
PolySystem rational_normal_curve(int n, std::uint64_t seed);

// Cycloheptane conformation curve: ring of 7 unit-length bonds with all bond
// angles 115 degrees, rigid motions removed by pinning three atoms. Nine
// quadrics in R^10. rescale applies a random real diagonal change of
// coordinates so the curve misses the isotropic quadric at infinity.
PolySystem cycloheptane_curve(std::uint64_t seed, bool rescale = true);

}  // namespace bnk
