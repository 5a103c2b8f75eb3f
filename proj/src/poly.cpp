#include "bnk/poly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bnk {

namespace {
constexpr double kCoeffFloor = 1e-300;

int total_degree(const std::vector<int>& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}
}  // namespace

bool exps_before(const std::vector<int>& a, const std::vector<int>& b) {
  int da = total_degree(a);
  int db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

Poly Poly::constant(int num_vars, Cx c) {
  Poly p(num_vars);
  p.add_term(std::vector<int>(num_vars, 0), c);
  return p;
}

Poly Poly::variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) throw std::out_of_range("variable index");
  Poly p(num_vars);
  std::vector<int> e(num_vars, 0);
  e[index] = 1;
  p.add_term(e, Cx(1.0, 0.0));
  return p;
}

int Poly::degree() const {
  // terms_ is graded-lex sorted, the leading term has maximal total degree
  return terms_.empty() ? 0 : total_degree(terms_.front().exps);
}

int Poly::degree_in(const std::vector<char>& mask) const {
  int d = 0;
  for (const Term& t : terms_) {
    int s = 0;
    for (size_t i = 0; i < t.exps.size(); ++i)
      if (mask[i]) s += t.exps[i];
    d = std::max(d, s);
  }
  return d;
}

void Poly::add_term(const std::vector<int>& exps, Cx c) {
  if (static_cast<int>(exps.size()) != num_vars_)
    throw std::invalid_argument("exponent vector length mismatch");
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), exps,
      [](const Term& t, const std::vector<int>& e) { return exps_before(t.exps, e); });
  if (it != terms_.end() && it->exps == exps) {
    it->coeff += c;
    if (std::abs(it->coeff) < kCoeffFloor) terms_.erase(it);
  } else if (std::abs(c) >= kCoeffFloor) {
    terms_.insert(it, Term{exps, c});
  }
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.num_vars_ != num_vars_)
    throw std::invalid_argument("adding polynomials over different variable sets");
  for (const Term& t : other.terms_) add_term(t.exps, t.coeff);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.num_vars_ != num_vars_)
    throw std::invalid_argument("subtracting polynomials over different variable sets");
  for (const Term& t : other.terms_) add_term(t.exps, -t.coeff);
  return *this;
}

Poly& Poly::operator*=(Cx c) {
  if (std::abs(c) < kCoeffFloor) {
    terms_.clear();
    return *this;
  }
  for (Term& t : terms_) t.coeff *= c;
  normalize();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.num_vars_ != b.num_vars_)
    throw std::invalid_argument("multiplying polynomials over different variable sets");
  Poly out(a.num_vars_);
  std::vector<int> e(a.num_vars_);
  for (const Term& ta : a.terms_) {
    for (const Term& tb : b.terms_) {
      for (int i = 0; i < a.num_vars_; ++i) e[i] = ta.exps[i] + tb.exps[i];
      out.add_term(e, ta.coeff * tb.coeff);
    }
  }
  return out;
}

void Poly::normalize() {
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                              [](const Term& t) { return std::abs(t.coeff) < kCoeffFloor; }),
               terms_.end());
}

Poly Poly::derivative(int var) const {
  if (var < 0 || var >= num_vars_) throw std::out_of_range("derivative variable index");
  Poly out(num_vars_);
  for (const Term& t : terms_) {
    if (t.exps[var] == 0) continue;
    std::vector<int> e = t.exps;
    Cx c = t.coeff * static_cast<double>(e[var]);
    e[var] -= 1;
    out.add_term(e, c);
  }
  return out;
}

Cx Poly::eval(std::span<const Cx> point) const {
  if (static_cast<int>(point.size()) != num_vars_)
    throw std::invalid_argument("evaluation point dimension mismatch");
  Cx sum(0.0, 0.0);
  for (const Term& t : terms_) {
    Cx m = t.coeff;
    for (int i = 0; i < num_vars_; ++i) {
      Cx p = point[i];
      for (int k = t.exps[i]; k > 0; --k) m *= p;
    }
    sum += m;
  }
  return sum;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  if (static_cast<int>(images.size()) != num_vars_)
    throw std::invalid_argument("substitute: one image per variable required");
  int target_nv = num_vars_ == 0 ? 0 : images.front().num_vars();
  for (const Poly& im : images)
    if (im.num_vars() != target_nv)
      throw std::invalid_argument("substitute: images over different variable sets");

  // powers of each image up to the max exponent of that variable
  std::vector<std::vector<Poly>> pows(num_vars_);
  for (int i = 0; i < num_vars_; ++i) {
    int maxe = 0;
    for (const Term& t : terms_) maxe = std::max(maxe, t.exps[i]);
    pows[i].push_back(Poly::constant(target_nv, Cx(1.0, 0.0)));
    for (int k = 1; k <= maxe; ++k) pows[i].push_back(pows[i][k - 1] * images[i]);
  }

  Poly out(target_nv);
  for (const Term& t : terms_) {
    Poly m = Poly::constant(target_nv, t.coeff);
    for (int i = 0; i < num_vars_; ++i)
      if (t.exps[i] > 0) m = m * pows[i][t.exps[i]];
    out += m;
  }
  return out;
}

Poly Poly::embedded(int new_num_vars, int offset) const {
  if (offset < 0 || offset + num_vars_ > new_num_vars)
    throw std::invalid_argument("embedded: variables out of range");
  Poly out(new_num_vars);
  std::vector<int> e(new_num_vars, 0);
  for (const Term& t : terms_) {
    std::fill(e.begin(), e.end(), 0);
    std::copy(t.exps.begin(), t.exps.end(), e.begin() + offset);
    out.add_term(e, t.coeff);
  }
  return out;
}

bool Poly::operator==(const Poly& other) const {
  if (num_vars_ != other.num_vars_ || terms_.size() != other.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exps != other.terms_[i].exps || terms_[i].coeff != other.terms_[i].coeff)
      return false;
  return true;
}

Eigen::VectorXcd evaluate(const PolySystem& s, const Eigen::VectorXcd& point) {
  if (point.size() != s.ambient_dim())
    throw std::invalid_argument("system evaluation point dimension mismatch");
  Eigen::VectorXcd out(static_cast<int>(s.polys.size()));
  std::span<const Cx> pt(point.data(), static_cast<size_t>(point.size()));
  for (size_t i = 0; i < s.polys.size(); ++i) out[static_cast<int>(i)] = s.polys[i].eval(pt);
  return out;
}

std::vector<std::vector<Poly>> jacobian_polys(const PolySystem& s) {
  std::vector<std::vector<Poly>> jac(s.polys.size());
  for (size_t i = 0; i < s.polys.size(); ++i) {
    jac[i].reserve(s.vars.size());
    for (int j = 0; j < s.ambient_dim(); ++j) jac[i].push_back(s.polys[i].derivative(j));
  }
  return jac;
}

Eigen::MatrixXcd jacobian(const PolySystem& s, const Eigen::VectorXcd& point) {
  SystemEval ev(s);
  Eigen::MatrixXcd out;
  ev.jacobian_at(point, out);
  return out;
}

SystemEval::SystemEval(PolySystem s) : sys_(std::move(s)), jac_(jacobian_polys(sys_)) {}

void SystemEval::values(const Eigen::VectorXcd& z, Eigen::VectorXcd& out) const {
  if (z.size() != sys_.ambient_dim())
    throw std::invalid_argument("SystemEval: point dimension mismatch");
  out.resize(num_polys());
  std::span<const Cx> pt(z.data(), static_cast<size_t>(z.size()));
  for (int i = 0; i < num_polys(); ++i) out[i] = sys_.polys[i].eval(pt);
}

void SystemEval::jacobian_at(const Eigen::VectorXcd& z, Eigen::MatrixXcd& out) const {
  if (z.size() != sys_.ambient_dim())
    throw std::invalid_argument("SystemEval: point dimension mismatch");
  out.resize(num_polys(), num_vars());
  std::span<const Cx> pt(z.data(), static_cast<size_t>(z.size()));
  for (int i = 0; i < num_polys(); ++i)
    for (int j = 0; j < num_vars(); ++j) out(i, j) = jac_[i][j].eval(pt);
}

}  // namespace bnk
