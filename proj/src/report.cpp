#include "bnk/report.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bnk/rng.hpp"

namespace bnk {

namespace {

using nlohmann::json;

json cx(Cx z) { return json::array({z.real(), z.imag()}); }

json cvec(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(cx(v[i]));
  return out;
}

json pair_json(const BottleneckPair& p) {
  json j;
  j["x"] = cvec(p.x);
  j["y"] = cvec(p.y);
  j["v"] = cvec(p.v);
  j["w"] = cvec(p.w);
  j["sq_distance"] = cx(p.sq_distance);
  j["is_real"] = p.is_real;
  if (p.is_real) j["distance"] = p.distance;
  j["residual_full"] = p.residual_full;
  j["normality_residual"] = p.normality_residual;
  j["path_index"] = p.path_index;
  return j;
}

json counts_json(const ClassifyCounts& c) {
  return json{{"diagonal", c.diagonal},
              {"divergent", c.divergent},
              {"singular", c.singular},
              {"extraneous", c.extraneous}};
}

json tracker_json(const TrackerConfig& t) {
  json j;
  j["newton_tol"] = t.newton_tol;
  j["max_newton_iters"] = t.max_newton_iters;
  j["initial_step"] = t.initial_step;
  j["min_step"] = t.min_step;
  j["max_step"] = t.max_step;
  j["step_expand_after"] = t.step_expand_after;
  j["step_cut_factor"] = t.step_cut_factor;
  j["divergence_norm"] = t.divergence_norm;
  j["endgame_t"] = t.endgame_t;
  j["final_tol"] = t.final_tol;
  j["singular_cond"] = t.singular_cond;
  j["max_steps"] = t.max_steps;
  return j;
}

}  // namespace

json locus_json(const NormalLocusResult& locus) {
  json j;
  j["edd"] = locus.edd;
  j["paths_followed"] = locus.paths_followed;
  j["divergent"] = locus.divergent;
  j["p0"] = cvec(locus.p0);
  j["seed"] = locus.seed;
  j["zero_warning"] = locus.zero_warning;
  json pts = json::array();
  for (const NormalLocusPoint& p : locus.points)
    pts.push_back(json{{"x", cvec(p.x)}, {"v", cvec(p.v)}, {"residual", p.residual}});
  j["points"] = pts;
  return j;
}

json report_json(const RunReport& report, const BottleneckRunConfig& cfg, bool include_timing) {
  json j;
  j["config"] = json{{"gamma", cx(report.gamma)},
                     {"p0", cvec(report.p0)},
                     {"seed", report.seed},
                     {"symmetric", report.symmetric},
                     {"diag_tol", cfg.diag_tol},
                     {"real_tol", cfg.real_tol},
                     {"dedup_tol", cfg.dedup_tol},
                     {"filter_tol", cfg.filter_tol},
                     {"threads", cfg.threads},
                     {"tracker", tracker_json(cfg.tracker)}};
  j["locus_x"] = locus_json(report.locus_x);
  j["locus_y"] = locus_json(report.locus_y);
  j["paths"] = report.paths;
  j["counts"] = counts_json(report.counts);
  json pairs = json::array();
  for (const BottleneckPair& p : report.pairs) pairs.push_back(pair_json(p));
  j["pairs"] = pairs;
  j["num_pairs"] = static_cast<int>(report.pairs.size());
  j["real_pairs"] = report.real_pairs;
  j["bound_violated"] = report.bound_violated;
  if (include_timing)
    j["timing"] = json{{"start_solve", report.timing.start_solve},
                       {"tracking", report.timing.tracking},
                       {"classify", report.timing.classify},
                       {"total", report.timing.total}};
  return j;
}

json direct_report_json(const DirectSolveReport& report, bool include_timing) {
  json j;
  j["paths"] = report.paths;
  j["counts"] = counts_json(report.counts);
  json pairs = json::array();
  for (const BottleneckPair& p : report.pairs) pairs.push_back(pair_json(p));
  j["pairs"] = pairs;
  j["num_pairs"] = static_cast<int>(report.pairs.size());
  j["real_pairs"] = report.real_pairs;
  if (include_timing) j["wall_time"] = report.wall_time;
  return j;
}

void write_cloud_csv(const SampleCloud& cloud, const std::string& path,
                     const std::vector<int>* labels) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  for (size_t i = 0; i < cloud.points.size(); ++i) {
    const Eigen::VectorXd& p = cloud.points[i];
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      if (k) out << ',';
      out << p[k];
    }
    if (labels) out << ',' << (*labels)[i];
    out << '\n';
  }
}

SampleCloud read_cloud_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  SampleCloud cloud;
  cloud.source = path;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    Eigen::VectorXd p(static_cast<Eigen::Index>(vals.size()));
    for (size_t k = 0; k < vals.size(); ++k) p[static_cast<Eigen::Index>(k)] = vals[k];
    if (!cloud.points.empty() && cloud.points.front().size() != p.size())
      throw std::runtime_error("ragged rows in " + path);
    cloud.points.push_back(std::move(p));
  }
  return cloud;
}

namespace {

void write_svg(const std::string& path, const std::vector<Eigen::VectorXd>& samples,
               const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& segments) {
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  auto grow = [&](const Eigen::VectorXd& p) {
    lo_x = std::min(lo_x, p[0]);
    hi_x = std::max(hi_x, p[0]);
    lo_y = std::min(lo_y, p[1]);
    hi_y = std::max(hi_y, p[1]);
  };
  for (const auto& p : samples) grow(p);
  for (const auto& [a, b] : segments) grow(a), grow(b);
  double pad = 0.1 * std::max({hi_x - lo_x, hi_y - lo_y, 1e-6});
  lo_x -= pad, hi_x += pad, lo_y -= pad, hi_y += pad;
  double w = 600.0, h = 600.0;
  double sc = std::min(w / (hi_x - lo_x), h / (hi_y - lo_y));
  auto px = [&](double x) { return (x - lo_x) * sc; };
  auto py = [&](double y) { return h - (y - lo_y) * sc; };  // SVG y grows down

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\">\n";
  for (const auto& [a, b] : segments)
    out << "  <line x1=\"" << px(a[0]) << "\" y1=\"" << py(a[1]) << "\" x2=\"" << px(b[0])
        << "\" y2=\"" << py(b[1]) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (const auto& p : samples)
    out << "  <circle cx=\"" << px(p[0]) << "\" cy=\"" << py(p[1])
        << "\" r=\"2\" fill=\"steelblue\"/>\n";
  for (const auto& [a, b] : segments) {
    out << "  <circle cx=\"" << px(a[0]) << "\" cy=\"" << py(a[1])
        << "\" r=\"3.5\" fill=\"red\"/>\n";
    out << "  <circle cx=\"" << px(b[0]) << "\" cy=\"" << py(b[1])
        << "\" r=\"3.5\" fill=\"red\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace

PlotFiles emit_plot(const std::vector<BottleneckPair>& pairs, const SampleCloud* cloud,
                    const std::string& prefix, std::uint64_t seed) {
  PlotFiles files;
  std::vector<Eigen::VectorXd> samples;
  if (cloud) samples = cloud->points;
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> segments;
  for (const BottleneckPair& p : pairs)
    if (p.is_real) segments.emplace_back(p.x.real(), p.y.real());
  if (samples.empty() && segments.empty()) {
    files.notice = "nothing to plot";
    return files;
  }

  Eigen::Index n = samples.empty() ? segments.front().first.size() : samples.front().size();
  if (n > 3) {
    // random orthogonal projection to R^3 from the QR of a seeded Gaussian
    Rng rng = Rng(seed).derive("plot-projection");
    Eigen::MatrixXd g(n, 3);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < 3; ++j) g(i, j) = rng.gauss();
    Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ() *
                        Eigen::MatrixXd::Identity(n, 3);
    for (auto& p : samples) p = (q.transpose() * p).eval();
    for (auto& [a, b] : segments) {
      a = (q.transpose() * a).eval();
      b = (q.transpose() * b).eval();
    }
    n = 3;
  }

  {
    std::string path = prefix + "_points.csv";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.precision(17);
    for (const auto& p : samples) {
      for (Eigen::Index k = 0; k < p.size(); ++k) out << (k ? "," : "") << p[k];
      out << '\n';
    }
    files.written.push_back(path);
  }
  {
    std::string path = prefix + "_segments.csv";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.precision(17);
    for (const auto& [a, b] : segments) {
      for (Eigen::Index k = 0; k < a.size(); ++k) out << (k ? "," : "") << a[k];
      for (Eigen::Index k = 0; k < b.size(); ++k) out << ',' << b[k];
      out << '\n';
    }
    files.written.push_back(path);
  }
  if (n == 2) {
    std::string path = prefix + ".svg";
    write_svg(path, samples, segments);
    files.written.push_back(path);
  }
  return files;
}

}  // namespace bnk
