#include "bnk/multihom.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

namespace bnk {

VariableGroups VariableGroups::blocks(const std::vector<int>& sizes) {
  VariableGroups g;
  int offset = 0;
  for (int s : sizes) {
    std::vector<int> grp(s);
    std::iota(grp.begin(), grp.end(), offset);
    offset += s;
    g.groups.push_back(std::move(grp));
  }
  return g;
}

std::vector<std::vector<int>> multidegree_table(const PolySystem& s, const VariableGroups& g) {
  int n = s.ambient_dim();
  std::vector<char> covered(n, 0);
  std::vector<std::vector<char>> masks;
  for (const auto& grp : g.groups) {
    std::vector<char> mask(n, 0);
    for (int v : grp) {
      if (v < 0 || v >= n || covered[v]) throw std::invalid_argument("groups must be a partition");
      covered[v] = mask[v] = 1;
    }
    masks.push_back(std::move(mask));
  }
  for (char c : covered)
    if (!c) throw std::invalid_argument("groups must cover all variables");

  std::vector<std::vector<int>> table;
  for (const Poly& p : s.polys) {
    std::vector<int> row;
    for (const auto& mask : masks) row.push_back(p.degree_in(mask));
    table.push_back(std::move(row));
  }
  return table;
}

long long multihomogeneous_count(const PolySystem& s, const VariableGroups& g) {
  if (static_cast<int>(s.polys.size()) != s.ambient_dim())
    throw std::invalid_argument("multihomogeneous count requires a square system");
  auto deg = multidegree_table(s, g);
  int k = static_cast<int>(g.groups.size());
  std::vector<int> caps(k);
  for (int j = 0; j < k; ++j) caps[j] = static_cast<int>(g.groups[j].size());

  // forward expansion: state = slots used per group so far
  std::map<std::vector<int>, long long> states;
  states[std::vector<int>(k, 0)] = 1;
  for (const auto& row : deg) {
    std::map<std::vector<int>, long long> next;
    for (const auto& [used, ways] : states) {
      for (int j = 0; j < k; ++j) {
        if (row[j] == 0 || used[j] >= caps[j]) continue;
        std::vector<int> u = used;
        ++u[j];
        next[u] += ways * row[j];
      }
    }
    states.swap(next);
  }
  auto it = states.find(caps);
  return it == states.end() ? 0 : it->second;
}

namespace {

// affine-linear form over the variables of one group: coeffs per group
// variable plus a trailing constant
struct LinForm {
  Eigen::VectorXcd coeffs;
  Cx constant;
};

Poly form_to_poly(const LinForm& f, const std::vector<int>& group, int num_vars) {
  Poly p = Poly::constant(num_vars, f.constant);
  for (size_t m = 0; m < group.size(); ++m)
    p += Poly::variable(num_vars, group[m]) * f.coeffs[static_cast<int>(m)];
  return p;
}

}  // namespace

ProductStart build_product_start(const PolySystem& target, const VariableGroups& g, Rng& rng) {
  int nv = target.ambient_dim();
  int rows = static_cast<int>(target.polys.size());
  if (rows != nv) throw std::invalid_argument("product start requires a square target");
  auto deg = multidegree_table(target, g);
  int k = static_cast<int>(g.groups.size());

  // forms[i][j] = the deg(i, j) linear factors of row i living in group j
  std::vector<std::vector<std::vector<LinForm>>> forms(rows);
  ProductStart out;
  out.system.vars = target.vars;
  out.system.declared_dim = target.declared_dim;
  for (int i = 0; i < rows; ++i) {
    forms[i].resize(k);
    Poly row = Poly::constant(nv, Cx(1.0, 0.0));
    for (int j = 0; j < k; ++j) {
      for (int d = 0; d < deg[i][j]; ++d) {
        LinForm f;
        f.coeffs.resize(static_cast<int>(g.groups[j].size()));
        for (int m = 0; m < f.coeffs.size(); ++m) f.coeffs[m] = rng.complex_gauss();
        f.constant = rng.complex_gauss();
        row = row * form_to_poly(f, g.groups[j], nv);
        forms[i][j].push_back(std::move(f));
      }
    }
    out.system.polys.push_back(std::move(row));
  }

  // enumerate factor selections: per row pick one (group, factor) so that
  // group j is picked |group j| times in total, then solve group-wise
  std::vector<int> rem(k);
  for (int j = 0; j < k; ++j) rem[j] = static_cast<int>(g.groups[j].size());
  std::vector<std::pair<int, int>> choice(rows);  // (group, factor index) per row

  auto emit = [&]() {
    Eigen::VectorXcd point(nv);
    for (int j = 0; j < k; ++j) {
      int sz = static_cast<int>(g.groups[j].size());
      Eigen::MatrixXcd A(sz, sz);
      Eigen::VectorXcd b(sz);
      int r = 0;
      for (int i = 0; i < rows; ++i) {
        if (choice[i].first != j) continue;
        const LinForm& f = forms[i][j][static_cast<size_t>(choice[i].second)];
        A.row(r) = f.coeffs.transpose();
        b[r] = -f.constant;
        ++r;
      }
      Eigen::VectorXcd sol = A.partialPivLu().solve(b);
      for (int m = 0; m < sz; ++m) point[g.groups[j][static_cast<size_t>(m)]] = sol[m];
    }
    out.points.push_back(std::move(point));
  };

  auto rec = [&](auto&& self, int i) -> void {
    if (i == rows) {
      emit();
      return;
    }
    for (int j = 0; j < k; ++j) {
      if (rem[j] == 0 || deg[i][j] == 0) continue;
      --rem[j];
      for (int d = 0; d < deg[i][j]; ++d) {
        choice[i] = {j, d};
        self(self, i + 1);
      }
      ++rem[j];
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace bnk
