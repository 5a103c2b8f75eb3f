#include "bnk/topology.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "bnk/homotopy.hpp"
#include "bnk/rng.hpp"
#include "bnk/startsys.hpp"
#include "bnk/system_ops.hpp"

namespace bnk {

namespace {

struct TotalDegreeStart {
  PolySystem system;
  std::vector<Eigen::VectorXcd> points;
};

// S_i = x_i^{d_i} - a_i with random unit a_i; roots enumerate by a
// mixed-radix counter over the d_i-th roots of each a_i.
TotalDegreeStart total_degree_start(const PolySystem& target, Rng& rng) {
  int n = static_cast<int>(target.polys.size());
  TotalDegreeStart out;
  out.system.vars = target.vars;
  out.system.declared_dim = 0;
  std::vector<int> degs(static_cast<size_t>(n));
  std::vector<std::vector<Cx>> roots(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    int d = target.polys[static_cast<size_t>(i)].degree();
    if (d < 1) throw std::invalid_argument("constant equation in slice system");
    degs[static_cast<size_t>(i)] = d;
    Cx a = rng.unit_complex();
    Poly s = Poly::variable(n, i);
    for (int k = 1; k < d; ++k) s = s * Poly::variable(n, i);
    s -= Poly::constant(n, a);
    out.system.polys.push_back(std::move(s));
    double arg = std::arg(a) / d;
    for (int j = 0; j < d; ++j) {
      double th = arg + 2.0 * std::numbers::pi * j / d;
      roots[static_cast<size_t>(i)].push_back(Cx(std::cos(th), std::sin(th)));
    }
  }
  std::vector<int> idx(static_cast<size_t>(n), 0);
  while (true) {
    Eigen::VectorXcd z(n);
    for (int i = 0; i < n; ++i) z[i] = roots[static_cast<size_t>(i)][static_cast<size_t>(idx[static_cast<size_t>(i)])];
    out.points.push_back(std::move(z));
    int pos = n - 1;
    while (pos >= 0 && ++idx[static_cast<size_t>(pos)] == degs[static_cast<size_t>(pos)]) {
      idx[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

}  // namespace

SampleCloud sample_curve(const PolySystem& spec, const Box& box, double spacing,
                         const TrackerConfig& cfg, std::uint64_t seed,
                         const SampleOptions& opts) {
  int n = spec.ambient_dim();
  if (spec.declared_dim != 1) throw std::invalid_argument("sample_curve expects a curve");
  if (static_cast<int>(box.intervals.size()) != n)
    throw std::invalid_argument("box dimension mismatch");
  if (spacing <= 0.0) throw std::invalid_argument("spacing must be positive");

  SquaredSystem sq = square_system(spec, Rng(seed).derive("sample-squaring").seed());
  Cx gamma = Rng(seed).derive("sample-gamma").unit_complex();
  Rng start_rng = Rng(seed).derive("sample-start");

  SampleCloud cloud;
  double dedup = spacing / 10.0;
  for (int k = 0; k < n; ++k) {
    auto [lo, hi] = box.intervals[static_cast<size_t>(k)];
    for (double c = lo; c <= hi + spacing * 1e-9; c += spacing) {
      PolySystem target;
      target.vars = spec.vars;
      target.declared_dim = 0;
      for (const Poly& p : sq.squared.polys) target.polys.push_back(p);
      target.polys.push_back(Poly::variable(n, k) - Poly::constant(n, Cx(c, 0.0)));

      TotalDegreeStart start = total_degree_start(target, start_rng);
      HomotopyProblem hp = gamma_homotopy(start.system, target, gamma, "curve-slice");
      std::vector<PathOutcome> outcomes = track_all(hp, start.points, cfg, opts.threads);

      for (const PathOutcome& o : outcomes) {
        if (o.status != PathStatus::Converged) continue;
        bool real = true;
        for (int i = 0; i < n; ++i)
          if (std::abs(o.endpoint[i].imag()) > opts.real_tol * (1.0 + std::abs(o.endpoint[i].real())))
            real = false;
        if (!real) continue;
        Eigen::VectorXd p = o.endpoint.real();
        bool inside = true;
        for (int i = 0; i < n; ++i) {
          auto [blo, bhi] = box.intervals[static_cast<size_t>(i)];
          if (p[i] < blo - opts.real_tol || p[i] > bhi + opts.real_tol) inside = false;
        }
        if (!inside) continue;
        double res = relative_residual(spec, p.cast<Cx>());
        if (res > opts.residual_tol) continue;
        bool dup = false;
        for (const Eigen::VectorXd& q : cloud.points)
          if ((q - p).norm() <= dedup) {
            dup = true;
            break;
          }
        if (dup) continue;
        cloud.residual_bound = std::max(cloud.residual_bound, res);
        cloud.points.push_back(std::move(p));
      }
    }
  }

  if (cloud.points.size() >= 2) {
    for (size_t i = 0; i < cloud.points.size(); ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (size_t j = 0; j < cloud.points.size(); ++j)
        if (j != i) nearest = std::min(nearest, (cloud.points[i] - cloud.points[j]).norm());
      cloud.max_gap = std::max(cloud.max_gap, nearest);
    }
  }
  return cloud;
}

namespace {

int find_root(std::vector<int>& parent, int i) {
  while (parent[static_cast<size_t>(i)] != i) {
    parent[static_cast<size_t>(i)] = parent[static_cast<size_t>(parent[static_cast<size_t>(i)])];
    i = parent[static_cast<size_t>(i)];
  }
  return i;
}

}  // namespace

RipsComponents rips_components(const SampleCloud& cloud, double r) {
  if (r <= 0.0) throw std::invalid_argument("r must be positive");
  int m = static_cast<int>(cloud.points.size());
  RipsComponents out;
  out.graph.radius = r;
  if (m == 0) return out;

  std::vector<int> parent(static_cast<size_t>(m));
  std::iota(parent.begin(), parent.end(), 0);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double d = (cloud.points[static_cast<size_t>(i)] - cloud.points[static_cast<size_t>(j)]).norm();
      if (d <= 0.0 || d >= 2.0 * r) continue;
      out.graph.edges.emplace_back(i, j);
      int ri = find_root(parent, i), rj = find_root(parent, j);
      if (ri != rj) parent[static_cast<size_t>(rj)] = ri;
    }

  out.labels.assign(static_cast<size_t>(m), -1);
  int next = 0;
  for (int i = 0; i < m; ++i) {
    int root = find_root(parent, i);
    if (out.labels[static_cast<size_t>(root)] < 0) out.labels[static_cast<size_t>(root)] = next++;
    out.labels[static_cast<size_t>(i)] = out.labels[static_cast<size_t>(root)];
  }
  out.count = next;
  out.graph.component_labels = out.labels;
  return out;
}

}  // namespace bnk
