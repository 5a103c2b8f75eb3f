// Acceptance gate: one line per criterion, nonzero exit when a fatal
// criterion fails. Runs the full pipeline on the stock examples only; the
// long cycloheptane / high-dimension runs are deliberately excluded.
#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bnk/baseline.hpp"
#include "bnk/bottleneck.hpp"
#include "bnk/families.hpp"
#include "bnk/multihom.hpp"
#include "bnk/rng.hpp"
#include "bnk/startsys.hpp"
#include "bnk/system_ops.hpp"
#include "bnk/topology.hpp"

using namespace bnk;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail, bool fatal = true) {
  std::printf("%-14s %s  %s%s\n", name.c_str(), pass ? "PASS" : "FAIL", detail.c_str(),
              !pass && !fatal ? "  (logged, non-fatal)" : "");
  std::fflush(stdout);
  if (!pass && fatal) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> sorted_real_distances(const std::vector<BottleneckPair>& pairs) {
  std::vector<double> d;
  for (const BottleneckPair& p : pairs)
    if (p.is_real) d.push_back(p.distance);
  std::sort(d.begin(), d.end());
  return d;
}

// unordered pair-set equality within tol (pairs may appear flipped)
bool same_pair_sets(const std::vector<BottleneckPair>& a, const std::vector<BottleneckPair>& b,
                    double tol) {
  auto contains = [&](const std::vector<BottleneckPair>& set, const BottleneckPair& p) {
    for (const BottleneckPair& q : set) {
      double direct = (p.x - q.x).norm() + (p.y - q.y).norm();
      double crossed = (p.x - q.y).norm() + (p.y - q.x).norm();
      if (std::min(direct, crossed) < tol) return true;
    }
    return false;
  };
  for (const BottleneckPair& p : a)
    if (!contains(b, p)) return false;
  for (const BottleneckPair& p : b)
    if (!contains(a, p)) return false;
  return true;
}

char buf[512];

void criterion_1_and_7a(RunReport& out) {
  auto t0 = std::chrono::steady_clock::now();
  PolySystem qx = random_hypersurface(3, 2, 11), qy = random_hypersurface(3, 2, 12);
  BottleneckRunConfig cfg;
  out = run_bottlenecks(qx, qy, cfg, 1);
  double dt = seconds_since(t0);
  bool pass = out.locus_x.edd == 6 && out.locus_y.edd == 6 && out.paths == 36 &&
              out.pairs.size() == 24 && out.counts.diagonal == 12 && dt < 60.0;
  std::snprintf(buf, sizeof buf,
                "two quadric surfaces: EDD %d,%d paths %d pairs %zu diagonal %d (%.1fs)",
                out.locus_x.edd, out.locus_y.edd, out.paths, out.pairs.size(),
                out.counts.diagonal, dt);
  report("criterion 1", pass, buf);
  report("criterion 7", out.counts.diagonal == 12,
         "diagonal count for (d,e)=(2,2) is de(d+e-1)=12: got " +
             std::to_string(out.counts.diagonal),
         /*fatal=*/false);
}

void criterion_2(RunReport& out) {
  auto t0 = std::chrono::steady_clock::now();
  PolySystem cx = rational_normal_curve(3, 31), cy = rational_normal_curve(3, 32);
  BottleneckRunConfig cfg;
  out = run_bottlenecks(cx, cy, cfg, 7);
  double dt = seconds_since(t0);
  bool pass = out.locus_x.paths_followed == 12 && out.locus_y.paths_followed == 12 &&
              out.paths == 49 && out.pairs.size() == 49 && dt < 60.0;
  std::snprintf(buf, sizeof buf,
                "two rational normal curves: start paths %d,%d main paths %d pairs %zu (%.1fs)",
                out.locus_x.paths_followed, out.locus_y.paths_followed, out.paths,
                out.pairs.size(), dt);
  report("criterion 2", pass, buf);
}

void criterion_3_and_7b() {
  auto t0 = std::chrono::steady_clock::now();
  PolySystem ax = random_hypersurface(3, 3, 21), ay = random_hypersurface(3, 3, 22);
  BottleneckRunConfig cfg;
  RunReport r = run_bottlenecks(ax, ay, cfg, 3);
  double dt = seconds_since(t0);
  bool pass = r.locus_x.edd == 21 && r.locus_y.edd == 21 && r.paths == 441 &&
              r.pairs.size() == 396 && dt < 900.0;
  std::snprintf(buf, sizeof buf, "two cubic surfaces: EDD %d,%d paths %d pairs %zu (%.1fs)",
                r.locus_x.edd, r.locus_y.edd, r.paths, r.pairs.size(), dt);
  report("criterion 3", pass, buf);

  // second half of the diagonal conjecture check: (d,e) = (2,3)
  PolySystem qx = random_hypersurface(3, 2, 11);
  RunReport mixed = run_bottlenecks(qx, ay, cfg, 5);
  report("criterion 7", mixed.counts.diagonal == 24,
         "diagonal count for (d,e)=(2,3) is de(d+e-1)=24: got " +
             std::to_string(mixed.counts.diagonal),
         /*fatal=*/false);
}

void criterion_4() {
  auto t0 = std::chrono::steady_clock::now();
  PolySystem s = goursat_surface();
  BottleneckRunConfig cfg;
  cfg.symmetric = true;
  RunReport r = run_bottlenecks(s, s, cfg, 4);
  double dt = seconds_since(t0);
  bool pass = r.locus_x.edd == 52 && r.locus_x.paths_followed == 108 && r.paths == 1326 &&
              r.real_pairs == 13 && dt < 900.0;
  std::snprintf(buf, sizeof buf,
                "Goursat: EDD %d from %d start paths, %d main paths, %d real bottlenecks (%.1fs)",
                r.locus_x.edd, r.locus_x.paths_followed, r.paths, r.real_pairs, dt);
  report("criterion 4", pass, buf);
}

void criterion_5(RunReport& out) {
  PolySystem e = ellipse_curve();
  BottleneckRunConfig cfg;
  cfg.symmetric = true;
  out = run_bottlenecks(e, e, cfg, 7);
  auto d = sorted_real_distances(out.pairs);
  bool pass = out.real_pairs == 2 && d.size() == 2 && std::abs(d[0] - 2.0) < 1e-8 &&
              std::abs(d[1] - 4.0) < 1e-8;
  std::snprintf(buf, sizeof buf, "ellipse: %d real bottlenecks, distances %.9f %.9f",
                out.real_pairs, d.size() > 0 ? d[0] : -1.0, d.size() > 1 ? d[1] : -1.0);
  report("criterion 5", pass, buf);
}

void criterion_6(const RunReport& quadrics, const RunReport& rnc, const RunReport& ellipse) {
  BottleneckRunConfig cfg;
  // same squarings as the corresponding run_bottlenecks calls
  SquaredSystem qf = square_system(random_hypersurface(3, 2, 11), Rng(1).derive("X").seed());
  SquaredSystem qg = square_system(random_hypersurface(3, 2, 12), Rng(1).derive("Y").seed());
  DirectSolveReport dq = solve_direct(qf, qg, cfg, 1);

  SquaredSystem rf = square_system(rational_normal_curve(3, 31), Rng(7).derive("X").seed());
  SquaredSystem rg = square_system(rational_normal_curve(3, 32), Rng(7).derive("Y").seed());
  DirectSolveReport dr = solve_direct(rf, rg, cfg, 7);

  BottleneckRunConfig scfg;
  scfg.symmetric = true;
  SquaredSystem ef = square_system(ellipse_curve(), Rng(7).derive("X").seed());
  DirectSolveReport de = solve_direct(ef, ef, scfg, 7);

  bool eq_q = same_pair_sets(dq.pairs, quadrics.pairs, 1e-6) &&
              dq.pairs.size() == quadrics.pairs.size();
  bool eq_r = same_pair_sets(dr.pairs, rnc.pairs, 1e-6) && dr.pairs.size() == rnc.pairs.size();
  bool eq_e = same_pair_sets(de.pairs, ellipse.pairs, 1e-6) &&
              de.pairs.size() == ellipse.pairs.size();
  bool paths_ok = dq.paths == 36 && dr.paths == 144;
  std::snprintf(buf, sizeof buf,
                "direct vs homotopy pair sets: quadrics %s (paths %d), rnc %s (paths %d), "
                "ellipse %s",
                eq_q ? "equal" : "DIFFER", dq.paths, eq_r ? "equal" : "DIFFER", dr.paths,
                eq_e ? "equal" : "DIFFER");
  report("criterion 6", eq_q && eq_r && eq_e && paths_ok, buf);
}

void criterion_8(const RunReport& seed1, const RunReport& ellipse) {
  PolySystem qx = random_hypersurface(3, 2, 11), qy = random_hypersurface(3, 2, 12);
  BottleneckRunConfig cfg;
  bool counts_ok = true, sets_ok = true;
  for (std::uint64_t s : {2ULL, 3ULL}) {
    RunReport r = run_bottlenecks(qx, qy, cfg, s);
    counts_ok = counts_ok && r.pairs.size() == seed1.pairs.size();
    sets_ok = sets_ok && same_pair_sets(r.pairs, seed1.pairs, 1e-6);
  }

  // rigid-motion equivariance of the ellipse bottlenecks
  double theta = 0.7;
  Eigen::Matrix2d rot;
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  Eigen::Vector2d b(0.3, -0.4);
  PolySystem moved = substitute_affine(ellipse_curve(), rot.transpose().cast<Cx>(),
                                       (-rot.transpose() * b).cast<Cx>());
  BottleneckRunConfig scfg;
  scfg.symmetric = true;
  RunReport turned = run_bottlenecks(moved, moved, scfg, 11);
  bool equi = turned.real_pairs == ellipse.real_pairs;
  for (const BottleneckPair& p : ellipse.pairs) {
    if (!p.is_real) continue;
    Eigen::Vector2d fx = rot * p.x.real() + b, fy = rot * p.y.real() + b;
    double best = 1e300;
    for (const BottleneckPair& q : turned.pairs) {
      if (!q.is_real) continue;
      Eigen::Vector2d qx = q.x.real(), qy = q.y.real();
      best = std::min(best, std::min((fx - qx).norm() + (fy - qy).norm(),
                                     (fx - qy).norm() + (fy - qx).norm()));
    }
    equi = equi && best < 1e-8;
  }
  std::snprintf(buf, sizeof buf,
                "3-seed pair sets %s; ellipse rigid-motion equivariance %s",
                counts_ok && sets_ok ? "identical" : "DIFFER", equi ? "holds" : "BROKEN");
  report("criterion 8", counts_ok && sets_ok && equi, buf);
}

void criterion_9() {
  PolySystem q = two_oval_quartic();
  BottleneckRunConfig cfg;
  cfg.symmetric = true;
  RunReport r = run_bottlenecks(q, q, cfg, 2);
  std::vector<BottleneckPair> reals = filter_real(r.pairs, cfg.real_tol);
  MinDistanceResult overall = min_bottleneck_distance(reals);
  // the two ovals live in the bands x in [-2,-1] and [1,2]: label by sign(x)
  std::vector<std::pair<int, int>> labels;
  for (const BottleneckPair& p : reals)
    labels.emplace_back(p.x[0].real() < 0 ? 0 : 1, p.y[0].real() < 0 ? 0 : 1);
  MinDistanceResult cross = min_bottleneck_distance(reals, labels);
  bool dists_ok = overall.found && std::abs(overall.distance - 1.0) < 1e-6 && cross.found &&
                  std::abs(cross.distance - 2.0) < 1e-6;

  Box box;
  box.intervals = {{-2.5, 2.5}, {-1.5, 1.5}};
  SampleCloud cloud = sample_curve(q, box, 0.05, cfg.tracker, 2);
  RipsComponents comps = rips_components(cloud, 0.4);
  bool rips_ok = comps.count == 2;
  std::snprintf(buf, sizeof buf,
                "two-oval quartic: min %.9f cross-component min %.9f; Rips(r=0.4) on %zu "
                "samples: %d components",
                overall.found ? overall.distance : -1.0, cross.found ? cross.distance : -1.0,
                cloud.points.size(), comps.count);
  report("criterion 9", dists_ok && rips_ok, buf);
}

// finite-difference Jacobian agreement for one homotopy
double fd_gap(const HomotopyProblem& hp, const Eigen::VectorXcd& z, double t) {
  const double h = 1e-7;
  Eigen::MatrixXcd j = hp.jz(z, t);
  double worst = 0.0;
  for (int c = 0; c < hp.dim; ++c) {
    Eigen::VectorXcd hi = z, lo = z;
    hi[c] += h;
    lo[c] -= h;
    Eigen::VectorXcd fd = (hp.h(hi, t) - hp.h(lo, t)) / (2.0 * h);
    worst = std::max(worst, (j.col(c) - fd).norm() / (1.0 + fd.norm()));
  }
  Eigen::VectorXcd ft = (hp.h(z, std::min(t + h, 1.0)) - hp.h(z, std::max(t - h, 0.0))) /
                        (std::min(t + h, 1.0) - std::max(t - h, 0.0));
  worst = std::max(worst, (hp.jt(z, t) - ft).norm() / (1.0 + ft.norm()));
  return worst;
}

void criterion_11(const RunReport& quadrics, const RunReport& rnc, const RunReport& ellipse) {
  Rng rng(17);
  auto random_point = [&](int n) {
    Eigen::VectorXcd z(n);
    for (int i = 0; i < n; ++i) z[i] = rng.complex_gauss();
    return z;
  };

  // every built-in homotopy flavor: gamma-trick (normal locus and slice
  // solves are the same construction), the main bottleneck homotopy, and its
  // projected variant
  double worst = 0.0;
  {
    SquaredSystem sq = square_system(rational_normal_curve(3, 31), 1);
    PolySystem target = build_normal_locus_system(sq, random_point(3));
    Rng srng(2);
    ProductStart start = build_product_start(target, VariableGroups::blocks({3, 2}), srng);
    HomotopyProblem hp = gamma_homotopy(start.system, target, Cx(0.6, 0.8), "t");
    for (double t : {1.0, 0.4, 1e-4})
      worst = std::max(worst, fd_gap(hp, random_point(hp.dim), t));
  }
  {
    SquaredSystem f = square_system(random_hypersurface(3, 2, 11), 1);
    SquaredSystem g = square_system(random_hypersurface(3, 3, 22), 2);
    BottleneckRunConfig cfg;
    cfg.gamma = Cx(0.6, 0.8);
    cfg.p0 = random_point(3);
    HomotopyProblem hp = build_main_homotopy(f, g, cfg);
    for (double t : {1.0, 0.4, 1e-4})
      worst = std::max(worst, fd_gap(hp, random_point(hp.dim), t));
    Eigen::MatrixXd m(2, 3);
    m << 1, 0, 0.5, 0, 1, -0.25;
    cfg.projection = m;
    HomotopyProblem hpp = build_projected_homotopy(f, g, cfg);
    for (double t : {1.0, 0.4, 1e-4})
      worst = std::max(worst, fd_gap(hpp, random_point(hpp.dim), t));
  }
  bool fd_ok = worst < 1e-6;

  // converged-endpoint residuals: re-track the ellipse main homotopy raw
  bool res_ok = true;
  {
    PolySystem e = ellipse_curve();
    std::uint64_t seed = 7;
    BottleneckRunConfig cfg;
    cfg.symmetric = true;
    cfg.gamma = Rng(seed).derive("gamma").unit_complex();
    Rng prng = Rng(seed).derive("p0");
    Eigen::VectorXcd p0(2);
    p0 << prng.complex_gauss(), prng.complex_gauss();
    cfg.p0 = p0;
    std::uint64_t sx = Rng(seed).derive("X").seed();
    SquaredSystem f = square_system(e, sx);
    NormalLocusResult locus = solve_normal_locus(e, cfg.p0, cfg.tracker, sx);
    auto starts = assemble_start_points(locus, locus, true);
    HomotopyProblem hp = build_main_homotopy(f, f, cfg);
    auto outs = track_all(hp, starts, cfg.tracker, 0);
    for (const PathOutcome& o : outs)
      if (o.status == PathStatus::Converged && o.residual > 1e-12) res_ok = false;
    for (const NormalLocusPoint& p : locus.points)
      if (p.residual > 1e-12) res_ok = false;
  }

  // normality residuals of every reported pair from the runs above
  double worst_pair = 0.0;
  for (const RunReport* r : {&quadrics, &rnc, &ellipse})
    for (const BottleneckPair& p : r->pairs)
      worst_pair = std::max(worst_pair, std::max(p.normality_residual, p.residual_full));
  bool pairs_ok = worst_pair <= 1e-8;

  std::snprintf(buf, sizeof buf,
                "FD-vs-analytic Jacobian gap %.2e; converged residuals <= 1e-12: %s; worst "
                "pair residual %.2e",
                worst, res_ok ? "yes" : "NO", worst_pair);
  report("criterion 11", fd_ok && res_ok && pairs_ok, buf);
}

}  // namespace

int main() {
  RunReport quadrics, rnc, ellipse;
  criterion_1_and_7a(quadrics);
  criterion_2(rnc);
  criterion_3_and_7b();
  criterion_4();
  criterion_5(ellipse);
  criterion_6(quadrics, rnc, ellipse);
  criterion_8(quadrics, ellipse);
  criterion_9();
  std::printf("%-14s SKIP  cycloheptane and C^7-C^9 table rows are excluded by design "
              "(available through the CLI)\n",
              "criterion 10");
  criterion_11(quadrics, rnc, ellipse);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all fatal criteria passed\n");
  return 0;
}
