#include "bnk/baseline.hpp"

#include <chrono>
#include <stdexcept>

#include "bnk/homotopy.hpp"
#include "bnk/multihom.hpp"

namespace bnk {

namespace {

// Lagrange system with the multiplier groups homogenized: v lives in C^{a+1}
// with leading coordinate v0 and a random patch lambda . v = 1, likewise w.
PolySystem build_patched_lagrange(const SquaredSystem& f, const SquaredSystem& g, Rng& rng) {
  int n = f.ambient_dim();
  int a = f.codim();
  int b = g.codim();
  int nv = 2 * n + (a + 1) + (b + 1);
  int v_off = 2 * n;          // v0, v1, ..., va
  int w_off = 2 * n + a + 1;  // w0, w1, ..., wb

  PolySystem sys;
  sys.declared_dim = 0;
  for (const std::string& s : f.original.vars) sys.vars.push_back(s);
  for (const std::string& s : g.original.vars) sys.vars.push_back(s + "2");
  for (int k = 0; k <= a; ++k) sys.vars.push_back("v" + std::to_string(k));
  for (int k = 0; k <= b; ++k) sys.vars.push_back("w" + std::to_string(k));

  for (const Poly& p : f.squared.polys) sys.polys.push_back(p.embedded(nv, 0));
  for (const Poly& p : g.squared.polys) sys.polys.push_back(p.embedded(nv, n));

  auto jf = jacobian_polys(f.squared);
  auto jg = jacobian_polys(g.squared);
  for (int i = 0; i < n; ++i) {
    Poly row = (Poly::variable(nv, i) - Poly::variable(nv, n + i)) * Poly::variable(nv, v_off);
    for (int k = 0; k < a; ++k)
      row -= jf[static_cast<size_t>(k)][static_cast<size_t>(i)].embedded(nv, 0) *
             Poly::variable(nv, v_off + 1 + k);
    sys.polys.push_back(std::move(row));
  }
  for (int i = 0; i < n; ++i) {
    Poly row = (Poly::variable(nv, n + i) - Poly::variable(nv, i)) * Poly::variable(nv, w_off);
    for (int k = 0; k < b; ++k)
      row -= jg[static_cast<size_t>(k)][static_cast<size_t>(i)].embedded(nv, n) *
             Poly::variable(nv, w_off + 1 + k);
    sys.polys.push_back(std::move(row));
  }

  for (int off : {v_off, w_off}) {
    int len = off == v_off ? a + 1 : b + 1;
    Poly patch = Poly::constant(nv, Cx(-1.0, 0.0));
    for (int k = 0; k < len; ++k) patch += Poly::variable(nv, off + k) * rng.complex_gauss();
    sys.polys.push_back(std::move(patch));
  }
  return sys;
}

}  // namespace

DirectSolveReport solve_direct(const SquaredSystem& f, const SquaredSystem& g,
                               const BottleneckRunConfig& cfg_in, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  int n = f.ambient_dim();
  if (g.ambient_dim() != n) throw std::invalid_argument("ambient dimension mismatch");
  int a = f.codim();
  int b = g.codim();

  BottleneckRunConfig cfg = cfg_in;
  if (cfg.gamma == Cx(0.0, 0.0)) cfg.gamma = Rng(seed).derive("direct-gamma").unit_complex();
  cfg.gamma /= std::abs(cfg.gamma);

  Rng patch_rng = Rng(seed).derive("direct-patch");
  PolySystem target = build_patched_lagrange(f, g, patch_rng);
  VariableGroups groups = VariableGroups::blocks({2 * n, a + 1, b + 1});
  Rng start_rng = Rng(seed).derive("direct-start");
  ProductStart start = build_product_start(target, groups, start_rng);

  HomotopyProblem hp = gamma_homotopy(start.system, target, cfg.gamma, "direct-lagrange");
  std::vector<PathOutcome> outcomes = track_all(hp, start.points, cfg.tracker, cfg.threads);

  // a path can be lost when it skims the discriminant for this particular
  // gamma; retries along rotated gammas stay valid because the start points
  // solve the t = 1 system for every gamma
  rescue_failed_paths(
      outcomes, start.points,
      [&](Cx g) { return gamma_homotopy(start.system, target, g, "direct-rescue"); },
      Rng(seed).derive("direct-rescue"), cfg.tracker, cfg.threads);

  // dehomogenize the multiplier groups; paths ending at multiplier infinity
  // (v0 or w0 numerically zero) carry no affine solution
  int v_off = 2 * n;
  int w_off = 2 * n + a + 1;
  std::vector<PathOutcome> affine;
  DirectSolveReport report;
  report.paths = static_cast<int>(start.points.size());
  for (const PathOutcome& o : outcomes) {
    if (o.status == PathStatus::Diverged || o.status == PathStatus::Truncated) {
      ++report.counts.divergent;
      continue;
    }
    Cx v0 = o.endpoint[v_off];
    Cx w0 = o.endpoint[w_off];
    double v_scale = o.endpoint.segment(v_off, a + 1).lpNorm<Eigen::Infinity>();
    double w_scale = o.endpoint.segment(w_off, b + 1).lpNorm<Eigen::Infinity>();
    if (std::abs(v0) < 1e-8 * (1.0 + v_scale) || std::abs(w0) < 1e-8 * (1.0 + w_scale)) {
      ++report.counts.divergent;
      continue;
    }
    PathOutcome p = o;
    p.endpoint.resize(2 * n + a + b);
    p.endpoint.head(2 * n) = o.endpoint.head(2 * n);
    p.endpoint.segment(2 * n, a) = o.endpoint.segment(v_off + 1, a) / v0;
    p.endpoint.tail(b) = o.endpoint.segment(w_off + 1, b) / w0;
    affine.push_back(std::move(p));
  }

  ClassifyResult cls = classify_endpoints(affine, f.original, g.original, cfg);
  report.counts.diagonal = cls.counts.diagonal;
  report.counts.singular = cls.counts.singular;
  report.counts.extraneous = cls.counts.extraneous;
  report.counts.divergent += cls.counts.divergent;
  report.pairs = std::move(cls.pairs);
  report.real_pairs = static_cast<int>(filter_real(report.pairs, cfg.real_tol).size());
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace bnk
