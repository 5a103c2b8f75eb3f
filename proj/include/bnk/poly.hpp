#pragma once

#include <Eigen/Core>
#include <complex>
#include <span>
#include <string>
#include <vector>

namespace bnk {

using Cx = std::complex<double>;

// One monomial: exponent per variable plus a complex coefficient.
struct Term {
  std::vector<int> exps;
  Cx coeff;
};

// Graded-lex on exponent vectors: higher total degree first, ties broken
// lexicographically with the larger vector first.
bool exps_before(const std::vector<int>& a, const std::vector<int>& b);

// Sparse multivariate polynomial over C. Terms are kept sorted in graded-lex
// order with no duplicate exponent vectors and no stored zero coefficients
// (|c| < 1e-300 is dropped). Evaluation sums terms in this order, so values
// are reproducible bit for bit.
class Poly {
public:
  Poly() : num_vars_(0) {}
  explicit Poly(int num_vars) : num_vars_(num_vars) {}

  static Poly constant(int num_vars, Cx c);
  static Poly variable(int num_vars, int index);

  int num_vars() const { return num_vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // max total exponent; 0 for the zero polynomial

  // Max total exponent over the variables flagged in mask.
  int degree_in(const std::vector<char>& mask) const;

  void add_term(const std::vector<int>& exps, Cx c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(Cx c);
  friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
  friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
  friend Poly operator*(Poly a, Cx c) { a *= c; return a; }
  friend Poly operator*(Cx c, Poly a) { a *= c; return a; }
  friend Poly operator*(const Poly& a, const Poly& b);

  Poly derivative(int var) const;

  Cx eval(std::span<const Cx> point) const;

  // Substitutes variable i by images[i] (all images over a common variable
  // space) and expands.
  Poly substitute(const std::vector<Poly>& images) const;

  // Same polynomial viewed in a larger variable space, with the original
  // variables placed at [offset, offset + num_vars).
  Poly embedded(int new_num_vars, int offset) const;

  bool operator==(const Poly& other) const;

private:
  void normalize();

  int num_vars_;
  std::vector<Term> terms_;
};

// A list of polynomials over a shared ordered variable set, together with the
// declared dimension of the variety they cut out.
struct PolySystem {
  std::vector<std::string> vars;
  std::vector<Poly> polys;
  int declared_dim = 0;

  int ambient_dim() const { return static_cast<int>(vars.size()); }
  int codim() const { return ambient_dim() - declared_dim; }
};

Eigen::VectorXcd evaluate(const PolySystem& s, const Eigen::VectorXcd& point);

// Symbolic partials, row i column j = d polys[i] / d x_j.
std::vector<std::vector<Poly>> jacobian_polys(const PolySystem& s);

// Convenience one-shot Jacobian evaluation; hot paths should hold a
// SystemEval instead so differentiation happens once.
Eigen::MatrixXcd jacobian(const PolySystem& s, const Eigen::VectorXcd& point);

// Immutable evaluator with the symbolic Jacobian precomputed. Safe to call
// concurrently from many threads.
class SystemEval {
public:
  explicit SystemEval(PolySystem s);

  int num_vars() const { return sys_.ambient_dim(); }
  int num_polys() const { return static_cast<int>(sys_.polys.size()); }
  const PolySystem& system() const { return sys_; }

  void values(const Eigen::VectorXcd& z, Eigen::VectorXcd& out) const;
  void jacobian_at(const Eigen::VectorXcd& z, Eigen::MatrixXcd& out) const;

private:
  PolySystem sys_;
  std::vector<std::vector<Poly>> jac_;
};

}  // namespace bnk
