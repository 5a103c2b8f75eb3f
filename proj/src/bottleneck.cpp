#include "bnk/bottleneck.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace bnk {

namespace {

std::vector<std::string> combined_var_names(const SquaredSystem& f, const SquaredSystem& g) {
  std::vector<std::string> vars = f.original.vars;
  std::set<std::string> taken(vars.begin(), vars.end());
  auto add_unique = [&](std::string name) {
    while (taken.count(name)) name += "_";
    taken.insert(name);
    vars.push_back(name);
  };
  for (const std::string& s : g.original.vars) add_unique(s + "2");
  for (int k = 1; k <= f.codim(); ++k) add_unique("v" + std::to_string(k));
  for (int k = 1; k <= g.codim(); ++k) add_unique("w" + std::to_string(k));
  return vars;
}

HomotopyProblem build_homotopy_impl(const SquaredSystem& f, const SquaredSystem& g,
                                    const BottleneckRunConfig& cfg) {
  int n = f.ambient_dim();
  if (g.ambient_dim() != n) throw std::invalid_argument("ambient dimension mismatch");
  int a = f.codim();
  int b = g.codim();
  int nv = 2 * n + a + b;
  Cx gamma = cfg.gamma;
  if (std::abs(std::abs(gamma) - 1.0) > 1e-12)
    throw std::invalid_argument("gamma must have unit modulus");
  if (!cfg.p0 || cfg.p0->size() != n) throw std::invalid_argument("p0 missing or wrong size");
  const Eigen::VectorXcd& p0 = *cfg.p0;

  Eigen::MatrixXd ptp;
  if (cfg.projection) {
    if (cfg.projection->cols() != n) throw std::invalid_argument("projection shape mismatch");
    ptp = cfg.projection->transpose() * (*cfg.projection);
  }

  PolySystem t_part, const_part;
  t_part.vars = const_part.vars = combined_var_names(f, g);
  t_part.declared_dim = const_part.declared_dim = 0;

  Poly zero(nv);
  for (const Poly& p : f.squared.polys) {
    t_part.polys.push_back(zero);
    const_part.polys.push_back(p.embedded(nv, 0));
  }
  for (const Poly& p : g.squared.polys) {
    t_part.polys.push_back(zero);
    const_part.polys.push_back(p.embedded(nv, n));
  }

  auto jf = jacobian_polys(f.squared);
  auto jg = jacobian_polys(g.squared);

  // projected difference: row i of (optionally M^T M applied) vector u - z
  auto proj_diff = [&](int i, int u_off, Cx u_shift_sign, const Eigen::VectorXcd* shift,
                       int z_off) {
    // returns sum_j P_ij * ((u_j - shift_j) or (u_j - z_j))
    Poly row(nv);
    auto entry = [&](int j) {
      Poly e = Poly::variable(nv, u_off + j);
      if (shift)
        e -= Poly::constant(nv, (*shift)[j]);
      else
        e -= Poly::variable(nv, z_off + j);
      return e;
    };
    (void)u_shift_sign;
    if (cfg.projection) {
      for (int j = 0; j < n; ++j)
        if (ptp(i, j) != 0.0) row += entry(j) * Cx(ptp(i, j), 0.0);
    } else {
      row = entry(i);
    }
    return row;
  };

  for (int i = 0; i < n; ++i) {
    Poly fi(nv);  // f_i(x, v) = sum_k dF_k/dx_i(x) v_k
    for (int k = 0; k < a; ++k)
      fi += jf[static_cast<size_t>(k)][static_cast<size_t>(i)].embedded(nv, 0) *
            Poly::variable(nv, 2 * n + k);
    Poly x_minus_p0 = proj_diff(i, 0, Cx(1, 0), &p0, 0);
    Poly x_minus_y = proj_diff(i, 0, Cx(1, 0), nullptr, n);
    // gamma t (x - p0) + (1 - t)(x - y) - (gamma t + 1 - t) f
    t_part.polys.push_back(x_minus_p0 * gamma - x_minus_y - fi * (gamma - Cx(1, 0)));
    const_part.polys.push_back(x_minus_y - fi);
  }
  for (int i = 0; i < n; ++i) {
    Poly gi(nv);
    for (int k = 0; k < b; ++k)
      gi += jg[static_cast<size_t>(k)][static_cast<size_t>(i)].embedded(nv, n) *
            Poly::variable(nv, 2 * n + a + k);
    Poly y_minus_p0 = proj_diff(i, n, Cx(1, 0), &p0, 0);
    Poly y_minus_x = proj_diff(i, n, Cx(1, 0), nullptr, 0);
    t_part.polys.push_back(y_minus_p0 * gamma - y_minus_x - gi * (gamma - Cx(1, 0)));
    const_part.polys.push_back(y_minus_x - gi);
  }

  return linear_t_homotopy(std::move(t_part), std::move(const_part),
                           cfg.projection ? "main-homotopy-projected" : "main-homotopy");
}

bool lex_before(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, double tol) {
  // ties are decided with a tolerance so that numerical noise in an earlier
  // coordinate cannot flip the canonical orientation of a mirrored pair
  double eps = tol * (1.0 + std::max(a.lpNorm<Eigen::Infinity>(), b.lpNorm<Eigen::Infinity>()));
  for (int i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].real() - b[i].real()) > eps) return a[i].real() < b[i].real();
    if (std::abs(a[i].imag() - b[i].imag()) > eps) return a[i].imag() < b[i].imag();
  }
  return false;
}

struct NormalityFit {
  double residual = 0.0;
  Eigen::VectorXcd multiplier;
};

NormalityFit ls_normality(const PolySystem& sys, const Eigen::VectorXcd& at,
                          const Eigen::VectorXcd& d) {
  // distance of d from the row space of the Jacobian of sys at `at`
  Eigen::MatrixXcd jt = jacobian(sys, at).transpose();  // n x r
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(jt);
  NormalityFit fit;
  fit.multiplier = cod.solve(d);
  fit.residual = (jt * fit.multiplier - d).norm() / (1.0 + d.norm());
  return fit;
}

// The incidence system on the original, unsquared equations: F(x) = 0,
// G(y) = 0, (x - y) = J_F(x)^T u, (y - x) = J_G(y)^T w (differences put
// through M^T M when a projection is set). Overdetermined inputs make the
// Jacobian rank-deficient in the multiplier directions, hence Gauss-Newton
// refinement via a complete orthogonal decomposition.
SystemEval build_incidence_eval(const PolySystem& f_hat, const PolySystem& g_hat,
                                const BottleneckRunConfig& cfg) {
  int n = f_hat.ambient_dim();
  int r1 = static_cast<int>(f_hat.polys.size());
  int r2 = static_cast<int>(g_hat.polys.size());
  int nv = 2 * n + r1 + r2;
  Eigen::MatrixXd ptp;
  if (cfg.projection) ptp = cfg.projection->transpose() * (*cfg.projection);

  PolySystem aug;
  for (int i = 0; i < nv; ++i) aug.vars.push_back("z" + std::to_string(i + 1));
  aug.declared_dim = 0;
  for (const Poly& p : f_hat.polys) aug.polys.push_back(p.embedded(nv, 0));
  for (const Poly& p : g_hat.polys) aug.polys.push_back(p.embedded(nv, n));

  auto diff_row = [&](int i, int from, int to) {
    Poly row(nv);
    if (cfg.projection) {
      for (int j = 0; j < n; ++j)
        if (ptp(i, j) != 0.0)
          row += (Poly::variable(nv, from + j) - Poly::variable(nv, to + j)) * Cx(ptp(i, j), 0.0);
    } else {
      row = Poly::variable(nv, from + i) - Poly::variable(nv, to + i);
    }
    return row;
  };
  auto jfh = jacobian_polys(f_hat);
  auto jgh = jacobian_polys(g_hat);
  for (int i = 0; i < n; ++i) {
    Poly row = diff_row(i, 0, n);
    for (int k = 0; k < r1; ++k)
      row -= jfh[static_cast<size_t>(k)][static_cast<size_t>(i)].embedded(nv, 0) *
             Poly::variable(nv, 2 * n + k);
    aug.polys.push_back(std::move(row));
  }
  for (int i = 0; i < n; ++i) {
    Poly row = diff_row(i, n, 0);
    for (int k = 0; k < r2; ++k)
      row -= jgh[static_cast<size_t>(k)][static_cast<size_t>(i)].embedded(nv, n) *
             Poly::variable(nv, 2 * n + r1 + k);
    aug.polys.push_back(std::move(row));
  }
  return SystemEval(std::move(aug));
}

// Damped Gauss-Newton on the incidence system. Pulls endpoints that drifted
// onto near-solutions of the squared equations back to the true incidence
// point; exact endpoints move at roundoff level only.
void polish_incidence(const SystemEval& eval, Eigen::VectorXcd& z) {
  Eigen::VectorXcd h(eval.num_polys());
  eval.values(z, h);
  if (!h.allFinite()) return;
  double res = h.lpNorm<Eigen::Infinity>();
  Eigen::MatrixXcd j(eval.num_polys(), eval.num_vars());
  for (int iter = 0; iter < 40 && res > 1e-14; ++iter) {
    eval.jacobian_at(z, j);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(j);
    Eigen::VectorXcd dz = cod.solve(-h);
    if (!dz.allFinite()) return;
    double scale = 1.0;
    bool improved = false;
    for (int k = 0; k < 12; ++k) {
      Eigen::VectorXcd cand = z + scale * dz;
      Eigen::VectorXcd hc(eval.num_polys());
      eval.values(cand, hc);
      double cres = hc.allFinite() ? hc.lpNorm<Eigen::Infinity>()
                                   : std::numeric_limits<double>::infinity();
      if (cres < res) {
        z = std::move(cand);
        h = std::move(hc);
        res = cres;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) return;
  }
}

}  // namespace

HomotopyProblem build_main_homotopy(const SquaredSystem& f, const SquaredSystem& g,
                                    const BottleneckRunConfig& cfg) {
  if (cfg.projection) {
    BottleneckRunConfig plain = cfg;
    plain.projection.reset();
    return build_homotopy_impl(f, g, plain);
  }
  return build_homotopy_impl(f, g, cfg);
}

HomotopyProblem build_projected_homotopy(const SquaredSystem& f, const SquaredSystem& g,
                                         const BottleneckRunConfig& cfg) {
  if (!cfg.projection) throw std::invalid_argument("projection matrix required");
  return build_homotopy_impl(f, g, cfg);
}

std::vector<Eigen::VectorXcd> assemble_start_points(const NormalLocusResult& s1,
                                                    const NormalLocusResult& s2,
                                                    bool symmetric) {
  std::vector<Eigen::VectorXcd> starts;
  if (s1.points.empty() || s2.points.empty()) return starts;
  int n = static_cast<int>(s1.points.front().x.size());
  int a = static_cast<int>(s1.points.front().v.size());
  int b = static_cast<int>(s2.points.front().v.size());

  auto make = [&](const NormalLocusPoint& p, const NormalLocusPoint& q) {
    Eigen::VectorXcd z(2 * n + a + b);
    z.head(n) = p.x;
    z.segment(n, n) = q.x;
    z.segment(2 * n, a) = p.v;
    z.tail(b) = q.v;
    return z;
  };

  if (symmetric) {
    for (size_t i = 0; i < s1.points.size(); ++i)
      for (size_t j = i + 1; j < s1.points.size(); ++j)
        starts.push_back(make(s1.points[i], s1.points[j]));
  } else {
    for (const NormalLocusPoint& p : s1.points)
      for (const NormalLocusPoint& q : s2.points) starts.push_back(make(p, q));
  }
  return starts;
}

ClassifyResult classify_endpoints(const std::vector<PathOutcome>& outcomes,
                                  const PolySystem& f_hat, const PolySystem& g_hat,
                                  const BottleneckRunConfig& cfg) {
  int n = f_hat.ambient_dim();
  int a = f_hat.codim();
  int b = g_hat.codim();
  int r1 = static_cast<int>(f_hat.polys.size());
  int r2 = static_cast<int>(g_hat.polys.size());
  ClassifyResult result;
  SystemEval incidence = build_incidence_eval(f_hat, g_hat, cfg);
  // pre-filter level for the polish step; final acceptance stays strict
  const double loose_tol = std::max(cfg.filter_tol, 1e-4);

  Eigen::MatrixXd ptp;
  if (cfg.projection) ptp = cfg.projection->transpose() * (*cfg.projection);
  auto projected = [&](const Eigen::VectorXcd& d) {
    return cfg.projection ? Eigen::VectorXcd(ptp.cast<Cx>() * d) : d;
  };

  for (const PathOutcome& o : outcomes) {
    if (o.status == PathStatus::Diverged || o.status == PathStatus::Truncated) {
      ++result.counts.divergent;
      continue;
    }
    Eigen::VectorXcd x = o.endpoint.head(n);
    Eigen::VectorXcd y = o.endpoint.segment(n, n);
    Eigen::VectorXcd v = o.endpoint.segment(2 * n, a);
    Eigen::VectorXcd w = o.endpoint.tail(b);

    double sep = (x - y).lpNorm<Eigen::Infinity>();
    if (sep <= cfg.diag_tol * (1.0 + x.lpNorm<Eigen::Infinity>())) {
      ++result.counts.diagonal;
      continue;
    }
    // A Singular tracker status is not trusted on its own: plain Newton also
    // stalls at perfectly regular endpoints whose coordinates are large
    // enough that the absolute final tolerance sits below evaluation noise.
    // Such endpoints run the full verification below and the isolation check
    // is the arbiter; without that check (projected runs) the status decides.
    bool from_singular = o.status == PathStatus::Singular;
    auto reject = [&] {
      if (from_singular)
        ++result.counts.singular;
      else
        ++result.counts.extraneous;
    };

    double res_full = std::max(relative_residual(f_hat, x), relative_residual(g_hat, y));
    if (res_full > loose_tol) {
      reject();
      continue;
    }
    if (from_singular && cfg.projection) {
      ++result.counts.singular;
      continue;
    }

    NormalityFit fit_u = ls_normality(f_hat, x, projected(x - y));
    NormalityFit fit_w = ls_normality(g_hat, y, projected(y - x));
    if (std::max(fit_u.residual, fit_w.residual) > loose_tol) {
      reject();
      continue;
    }

    // snap onto the unsquared incidence variety; shadows of solutions of the
    // squared equations land on the true pair and merge in deduplication
    {
      Eigen::VectorXcd z(2 * n + r1 + r2);
      z << x, y, fit_u.multiplier, fit_w.multiplier;
      polish_incidence(incidence, z);
      x = z.head(n);
      y = z.segment(n, n);
    }
    sep = (x - y).lpNorm<Eigen::Infinity>();
    if (sep <= cfg.diag_tol * (1.0 + x.lpNorm<Eigen::Infinity>())) {
      ++result.counts.diagonal;
      continue;
    }
    res_full = std::max(relative_residual(f_hat, x), relative_residual(g_hat, y));
    if (res_full > cfg.filter_tol) {
      reject();
      continue;
    }
    NormalityFit final_u = ls_normality(f_hat, x, projected(x - y));
    NormalityFit final_w = ls_normality(g_hat, y, projected(y - x));
    double nres = std::max(final_u.residual, final_w.residual);
    if (nres > 1e-8) {
      reject();
      continue;
    }

    // isolation check: a genuine pair is a nonsingular solution of the
    // incidence system up to the structural kernel of redundant multipliers.
    // Squaring artifacts (endpoints pinned at singular points of the squared
    // varieties) show extra near-zero singular values and are rejected.
    if (!cfg.projection) {
      Eigen::VectorXcd z(2 * n + r1 + r2);
      z << x, y, final_u.multiplier, final_w.multiplier;
      Eigen::MatrixXcd j(incidence.num_polys(), incidence.num_vars());
      incidence.jacobian_at(z, j);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(j);
      const auto& sv = svd.singularValues();
      double cut = 1e-6 * std::max(1.0, sv[0]);
      int tiny = 0;
      for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv[k] < cut) ++tiny;
      if (tiny > (r1 - a) + (r2 - b)) {
        ++result.counts.singular;
        continue;
      }
    }

    if (cfg.symmetric && lex_before(y, x, cfg.dedup_tol)) {
      std::swap(x, y);
      std::swap(v, w);
    }
    bool duplicate = false;
    for (const BottleneckPair& p : result.pairs) {
      double scale = 1.0 + std::max(p.x.lpNorm<Eigen::Infinity>(), p.y.lpNorm<Eigen::Infinity>());
      double direct = std::max((p.x - x).lpNorm<Eigen::Infinity>(),
                               (p.y - y).lpNorm<Eigen::Infinity>());
      double crossed = cfg.symmetric ? std::max((p.x - y).lpNorm<Eigen::Infinity>(),
                                                (p.y - x).lpNorm<Eigen::Infinity>())
                                     : std::numeric_limits<double>::infinity();
      if (std::min(direct, crossed) <= cfg.dedup_tol * scale) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;

    BottleneckPair pair;
    pair.sq_distance = (x - y).array().square().sum();
    pair.x = std::move(x);
    pair.y = std::move(y);
    pair.v = std::move(v);
    pair.w = std::move(w);
    pair.residual_full = res_full;
    pair.normality_residual = nres;
    pair.status_origin = o.status;
    pair.path_index = o.start_index;
    result.pairs.push_back(std::move(pair));
  }
  return result;
}

std::vector<BottleneckPair> filter_real(std::vector<BottleneckPair>& pairs, double real_tol) {
  std::vector<BottleneckPair> reals;
  for (BottleneckPair& p : pairs) {
    bool real = true;
    auto check = [&](const Eigen::VectorXcd& vec) {
      for (int i = 0; i < vec.size(); ++i)
        if (std::abs(vec[i].imag()) > real_tol * (1.0 + std::abs(vec[i].real()))) real = false;
    };
    check(p.x);
    check(p.y);
    p.is_real = real;
    if (real) {
      p.distance = (p.x.real() - p.y.real()).norm();
      reals.push_back(p);
    }
  }
  return reals;
}

MinDistanceResult min_bottleneck_distance(
    const std::vector<BottleneckPair>& real_pairs,
    const std::optional<std::vector<std::pair<int, int>>>& labels) {
  if (labels && labels->size() != real_pairs.size())
    throw std::invalid_argument("one label pair per bottleneck pair required");
  MinDistanceResult out;
  for (size_t i = 0; i < real_pairs.size(); ++i) {
    if (labels && (*labels)[i].first == (*labels)[i].second) continue;
    double d = real_pairs[i].distance;
    if (!out.found || d < out.distance) {
      out.found = true;
      out.distance = d;
      out.pair_index = static_cast<int>(i);
    }
  }
  return out;
}

RunReport run_bottlenecks(const PolySystem& spec_x, const PolySystem& spec_y,
                          const BottleneckRunConfig& cfg_in, std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  auto seconds = [](clock::time_point from, clock::time_point to) {
    return std::chrono::duration<double>(to - from).count();
  };
  auto t0 = clock::now();

  BottleneckRunConfig cfg = cfg_in;
  RunReport report;
  report.seed = seed;
  report.symmetric = cfg.symmetric;

  int n = spec_x.ambient_dim();
  if (spec_y.ambient_dim() != n)
    throw std::invalid_argument("input systems live in different ambient spaces");
  if (cfg.symmetric) {
    bool same = spec_x.vars == spec_y.vars && spec_x.polys.size() == spec_y.polys.size();
    for (size_t i = 0; same && i < spec_x.polys.size(); ++i)
      same = spec_x.polys[i] == spec_y.polys[i];
    if (!same) throw std::invalid_argument("symmetric mode requires identical input systems");
  }

  if (cfg.gamma == Cx(0.0, 0.0)) cfg.gamma = Rng(seed).derive("gamma").unit_complex();
  cfg.gamma /= std::abs(cfg.gamma);
  if (!cfg.p0) {
    Rng rng = Rng(seed).derive("p0");
    Eigen::VectorXcd p0(n);
    for (int i = 0; i < n; ++i) p0[i] = rng.complex_gauss();
    cfg.p0 = std::move(p0);
  }
  report.gamma = cfg.gamma;
  report.p0 = *cfg.p0;

  std::uint64_t seed_x = Rng(seed).derive("X").seed();
  std::uint64_t seed_y = cfg.symmetric ? seed_x : Rng(seed).derive("Y").seed();
  SquaredSystem f = square_system(spec_x, seed_x);
  SquaredSystem g = cfg.symmetric ? f : square_system(spec_y, seed_y);

  NormalLocusOptions locus_opts;
  locus_opts.filter_tol = cfg.filter_tol;
  locus_opts.dedup_tol = cfg.dedup_tol;
  locus_opts.projection = cfg.projection;
  locus_opts.threads = cfg.threads;
  report.locus_x = solve_normal_locus(spec_x, cfg.p0, cfg.tracker, seed_x, locus_opts);
  report.locus_y = cfg.symmetric
                       ? report.locus_x
                       : solve_normal_locus(spec_y, cfg.p0, cfg.tracker, seed_y, locus_opts);
  auto t1 = clock::now();
  report.timing.start_solve = seconds(t0, t1);

  std::vector<Eigen::VectorXcd> starts =
      assemble_start_points(report.locus_x, report.locus_y, cfg.symmetric);
  report.paths = static_cast<int>(starts.size());

  HomotopyProblem hp = cfg.projection ? build_projected_homotopy(f, g, cfg)
                                      : build_main_homotopy(f, g, cfg);
  std::vector<PathOutcome> outcomes = track_all(hp, starts, cfg.tracker, cfg.threads);
  rescue_failed_paths(
      outcomes, starts,
      [&](Cx gamma_k) {
        BottleneckRunConfig c = cfg;
        c.gamma = gamma_k;
        return c.projection ? build_projected_homotopy(f, g, c) : build_main_homotopy(f, g, c);
      },
      Rng(seed).derive("rescue"), cfg.tracker, cfg.threads);
  auto t2 = clock::now();
  report.timing.tracking = seconds(t1, t2);

  ClassifyResult cls = classify_endpoints(outcomes, spec_x, spec_y, cfg);
  report.counts = cls.counts;
  report.pairs = std::move(cls.pairs);
  report.real_pairs = static_cast<int>(filter_real(report.pairs, cfg.real_tol).size());
  report.bound_violated = static_cast<long long>(report.pairs.size()) >
                          static_cast<long long>(report.locus_x.edd) * report.locus_y.edd;
  auto t3 = clock::now();
  report.timing.classify = seconds(t2, t3);
  report.timing.total = seconds(t0, t3);
  return report;
}

}  // namespace bnk
