#include "bnk/startsys.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "bnk/homotopy.hpp"
#include "bnk/multihom.hpp"

namespace bnk {

double poly_magnitude(const Poly& p, const Eigen::VectorXcd& x) {
  double sum = 0.0;
  for (const Term& t : p.terms()) {
    double m = std::abs(t.coeff);
    for (int i = 0; i < p.num_vars(); ++i) {
      double a = std::abs(x[i]);
      for (int k = t.exps[i]; k > 0; --k) m *= a;
    }
    sum += m;
  }
  return sum;
}

double relative_residual(const PolySystem& s, const Eigen::VectorXcd& x) {
  double worst = 0.0;
  std::span<const Cx> pt(x.data(), static_cast<size_t>(x.size()));
  for (const Poly& p : s.polys) {
    double r = std::abs(p.eval(pt)) / (1.0 + poly_magnitude(p, x));
    worst = std::max(worst, r);
  }
  return worst;
}

std::vector<std::string> multiplier_names(const std::vector<std::string>& vars, int count,
                                          const std::string& stem) {
  std::set<std::string> taken(vars.begin(), vars.end());
  std::vector<std::string> names;
  std::string prefix = stem;
  while (true) {
    bool clash = false;
    for (int k = 1; k <= count; ++k)
      if (taken.count(prefix + std::to_string(k))) clash = true;
    if (!clash) break;
    prefix = "_" + prefix;
  }
  for (int k = 1; k <= count; ++k) names.push_back(prefix + std::to_string(k));
  return names;
}

PolySystem build_normal_locus_system(const SquaredSystem& f, const Eigen::VectorXcd& p0,
                                     const std::optional<Eigen::MatrixXd>& projection) {
  int n = f.ambient_dim();
  int a = f.codim();
  if (p0.size() != n) throw std::invalid_argument("p0 dimension mismatch");
  Eigen::MatrixXd ptp;  // M^T M
  if (projection) {
    if (projection->cols() != n) throw std::invalid_argument("projection shape mismatch");
    ptp = projection->transpose() * (*projection);
  }

  int nv = n + a;
  PolySystem out;
  out.vars = f.original.vars;
  for (const std::string& name : multiplier_names(f.original.vars, a, "v"))
    out.vars.push_back(name);
  out.declared_dim = 0;

  for (const Poly& p : f.squared.polys) out.polys.push_back(p.embedded(nv, 0));

  auto jac = jacobian_polys(f.squared);
  for (int i = 0; i < n; ++i) {
    // (x - p0)_i (optionally M^T M applied) minus f_i(x, v) = sum_k dF_k/dx_i v_k
    Poly row(nv);
    if (projection) {
      for (int j = 0; j < n; ++j) {
        if (ptp(i, j) == 0.0) continue;
        Poly lin = Poly::variable(nv, j) - Poly::constant(nv, p0[j]);
        row += lin * Cx(ptp(i, j), 0.0);
      }
    } else {
      row = Poly::variable(nv, i) - Poly::constant(nv, p0[i]);
    }
    for (int k = 0; k < a; ++k)
      row -= jac[static_cast<size_t>(k)][static_cast<size_t>(i)].embedded(nv, 0) *
             Poly::variable(nv, n + k);
    out.polys.push_back(std::move(row));
  }
  return out;
}

NormalLocusResult solve_normal_locus(const PolySystem& spec,
                                     const std::optional<Eigen::VectorXcd>& p0_in,
                                     const TrackerConfig& cfg, std::uint64_t seed,
                                     const NormalLocusOptions& opts) {
  int n = spec.ambient_dim();
  int a = spec.codim();
  SquaredSystem sq = square_system(spec, seed);

  NormalLocusResult result;
  result.seed = seed;
  if (p0_in) {
    if (p0_in->size() != n) throw std::invalid_argument("p0 dimension mismatch");
    result.p0 = *p0_in;
  } else {
    Rng rng = Rng(seed).derive("p0");
    result.p0.resize(n);
    for (int i = 0; i < n; ++i) result.p0[i] = rng.complex_gauss();
  }

  PolySystem target = build_normal_locus_system(sq, result.p0, opts.projection);
  VariableGroups groups = VariableGroups::blocks({n, a});
  Rng start_rng = Rng(seed).derive("start-system");
  ProductStart start = build_product_start(target, groups, start_rng);
  Cx gamma = Rng(seed).derive("start-gamma").unit_complex();

  HomotopyProblem hp = gamma_homotopy(start.system, target, gamma, "normal-locus");
  std::vector<PathOutcome> outcomes = track_all(hp, start.points, cfg, opts.threads);
  rescue_failed_paths(
      outcomes, start.points,
      [&](Cx g) { return gamma_homotopy(start.system, target, g, "normal-locus-rescue"); },
      Rng(seed).derive("start-rescue"), cfg, opts.threads);

  result.paths_followed = static_cast<int>(start.points.size());
  for (const PathOutcome& o : outcomes) {
    if (o.status == PathStatus::Diverged || o.status == PathStatus::Truncated) {
      ++result.divergent;
      continue;
    }
    if (o.status != PathStatus::Converged) continue;
    Eigen::VectorXcd x = o.endpoint.head(n);
    Eigen::VectorXcd v = o.endpoint.tail(a);
    // discard points of the squared system's extraneous components
    if (relative_residual(spec, x) > opts.filter_tol) continue;
    bool duplicate = false;
    for (const NormalLocusPoint& q : result.points) {
      double dx = (q.x - x).lpNorm<Eigen::Infinity>();
      double dv = (q.v - v).lpNorm<Eigen::Infinity>();
      double scale = 1.0 + std::max(q.x.lpNorm<Eigen::Infinity>(), q.v.lpNorm<Eigen::Infinity>());
      if (std::max(dx, dv) <= opts.dedup_tol * scale) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) result.points.push_back({std::move(x), std::move(v), o.residual});
  }
  result.edd = static_cast<int>(result.points.size());
  result.zero_warning = result.edd == 0;
  return result;
}

}  // namespace bnk
