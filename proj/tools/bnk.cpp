// bnk: isolated bottlenecks of pairs of algebraic varieties by numerical
// homotopy continuation, plus sampling and component-counting utilities.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "bnk/baseline.hpp"
#include "bnk/bottleneck.hpp"
#include "bnk/families.hpp"
#include "bnk/multihom.hpp"
#include "bnk/parse.hpp"
#include "bnk/report.hpp"
#include "bnk/topology.hpp"

namespace {

using bnk::Cx;
using bnk::PolySystem;
using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

// A system argument is a path to a file in the `vars:/dim:` grammar or the
// name of a built-in family:
//   circle | ellipse | two-oval-quartic | goursat |
//   hypersurface:<n>:<degree>:<seed> | rnc:<n>:<seed> | cycloheptane[:<seed>]
PolySystem load_system(const std::string& arg) {
  if (file_exists(arg)) {
    try {
      return bnk::parse_system(read_file(arg));
    } catch (const bnk::ParseError& e) {
      throw ValidationError(arg + ": " + e.what());
    }
  }
  auto parts = split(arg, ':');
  auto want = [&](size_t n) {
    if (parts.size() != n) throw ValidationError("malformed family spec: " + arg);
  };
  try {
    if (parts[0] == "circle") return want(1), bnk::unit_circle();
    if (parts[0] == "ellipse") return want(1), bnk::ellipse_curve();
    if (parts[0] == "two-oval-quartic") return want(1), bnk::two_oval_quartic();
    if (parts[0] == "goursat") return want(1), bnk::goursat_surface();
    if (parts[0] == "hypersurface")
      return want(4), bnk::random_hypersurface(std::stoi(parts[1]), std::stoi(parts[2]),
                                               std::stoull(parts[3]));
    if (parts[0] == "rnc")
      return want(3), bnk::rational_normal_curve(std::stoi(parts[1]), std::stoull(parts[2]));
    if (parts[0] == "cycloheptane") {
      if (parts.size() > 2) throw ValidationError("malformed family spec: " + arg);
      return bnk::cycloheptane_curve(parts.size() == 2 ? std::stoull(parts[1]) : 0);
    }
  } catch (const std::invalid_argument&) {
    throw ValidationError("malformed family spec: " + arg);
  }
  throw ValidationError("no such file or built-in family: " + arg);
}

// one coordinate per line, "re" or "re,im"
Eigen::VectorXcd read_p0(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::vector<Cx> vals;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.empty() || cells.size() > 2) throw ValidationError("malformed p0 row in " + path);
    try {
      vals.emplace_back(std::stod(cells[0]), cells.size() == 2 ? std::stod(cells[1]) : 0.0);
    } catch (const std::exception&) {
      throw ValidationError("malformed p0 row in " + path);
    }
  }
  Eigen::VectorXcd p0(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) p0[static_cast<Eigen::Index>(i)] = vals[i];
  return p0;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const std::string& cell : split(line, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ValidationError("malformed matrix row in " + path);
      }
    }
    if (!rows.empty() && rows.front().size() != row.size())
      throw ValidationError("ragged rows in " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError("empty matrix file " + path);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

// Flags shared by the solver subcommands, applied onto a run configuration.
struct CommonOpts {
  std::uint64_t seed = 1;
  std::vector<double> gamma;  // re, im
  std::string p0_path;
  std::string project_path;
  double tol_newton = -1.0, tol_final = -1.0, tol_real = -1.0, tol_dedup = -1.0, diag_tol = -1.0;
  int max_steps = -1;
  int threads = 0;
  bool strict = false;
  bool timing = false;

  void attach(CLI::App* cmd, bool with_gamma_p0 = true) {
    cmd->add_option("--seed", seed, "run seed (gamma, p0 and coefficient mixes derive from it)");
    if (with_gamma_p0) {
      cmd->add_option("--gamma", gamma, "gamma override as re,im (unit modulus)")
          ->delimiter(',')
          ->expected(2);
      cmd->add_option("--p0", p0_path, "file with the pinning point p0, one coordinate per line");
    }
    cmd->add_option("--tol-newton", tol_newton, "corrector tolerance during tracking");
    cmd->add_option("--tol-final", tol_final, "endpoint convergence tolerance");
    cmd->add_option("--tol-real", tol_real, "imaginary-part tolerance for the real filter");
    cmd->add_option("--tol-dedup", tol_dedup, "deduplication tolerance");
    cmd->add_option("--diag-tol", diag_tol, "diagonal (x = y) classification tolerance");
    cmd->add_option("--max-steps", max_steps, "tracking step budget per path");
    cmd->add_option("--threads", threads, "worker threads (0 = hardware count)");
    cmd->add_flag("--strict", strict, "escalate numerical warnings (zero EDD) to exit code 3");
    cmd->add_flag("--timing", timing, "include wall-clock timings in the report");
  }

  void apply(bnk::BottleneckRunConfig& cfg) const {
    if (!gamma.empty()) {
      Cx g(gamma[0], gamma[1]);
      if (std::abs(g) == 0.0) throw ValidationError("--gamma must be nonzero");
      cfg.gamma = g / std::abs(g);
    }
    if (!p0_path.empty()) cfg.p0 = read_p0(p0_path);
    if (!project_path.empty()) cfg.projection = read_matrix_csv(project_path);
    if (tol_newton > 0) cfg.tracker.newton_tol = tol_newton;
    if (tol_final > 0) cfg.tracker.final_tol = tol_final;
    if (tol_real > 0) cfg.real_tol = tol_real;
    if (tol_dedup > 0) cfg.dedup_tol = tol_dedup;
    if (diag_tol > 0) cfg.diag_tol = diag_tol;
    if (max_steps > 0) cfg.tracker.max_steps = max_steps;
    cfg.threads = threads;
  }
};

void check_dimensions(const PolySystem& sx, const PolySystem& sy,
                      const bnk::BottleneckRunConfig& cfg) {
  if (sx.ambient_dim() != sy.ambient_dim())
    throw ValidationError("the two systems live in different ambient spaces");
  if (cfg.p0 && cfg.p0->size() != sx.ambient_dim())
    throw ValidationError("p0 dimension does not match the systems");
  if (cfg.projection && cfg.projection->cols() != sx.ambient_dim())
    throw ValidationError("projection matrix has the wrong number of columns");
}

int cmd_normal_locus(const std::string& x_arg, const CommonOpts& opts,
                     const std::string& project_path) {
  PolySystem spec = load_system(x_arg);
  bnk::BottleneckRunConfig cfg;
  opts.apply(cfg);
  if (!project_path.empty()) cfg.projection = read_matrix_csv(project_path);
  if (cfg.p0 && cfg.p0->size() != spec.ambient_dim())
    throw ValidationError("p0 dimension does not match the system");
  bnk::NormalLocusOptions lopts;
  lopts.filter_tol = cfg.filter_tol;
  lopts.dedup_tol = cfg.dedup_tol;
  lopts.projection = cfg.projection;
  lopts.threads = cfg.threads;
  bnk::NormalLocusResult locus =
      bnk::solve_normal_locus(spec, cfg.p0, cfg.tracker, opts.seed, lopts);
  std::cout << bnk::locus_json(locus).dump(2) << "\n";
  if (locus.zero_warning && opts.strict)
    throw NumericalError("normal locus is empty (zero EDD)");
  return 0;
}

int cmd_bottlenecks(const std::string& x_arg, const std::string& y_arg, bool symmetric,
                    const CommonOpts& opts, const std::string& plot_prefix) {
  PolySystem sx = load_system(x_arg);
  PolySystem sy = y_arg.empty() ? sx : load_system(y_arg);
  bnk::BottleneckRunConfig cfg;
  cfg.symmetric = symmetric;
  opts.apply(cfg);
  check_dimensions(sx, sy, cfg);
  bnk::RunReport report = bnk::run_bottlenecks(sx, sy, cfg, opts.seed);
  std::cout << bnk::report_json(report, cfg, opts.timing).dump(2) << "\n";
  if (!plot_prefix.empty()) bnk::emit_plot(report.pairs, nullptr, plot_prefix, opts.seed);
  if (opts.strict && (report.locus_x.zero_warning || report.locus_y.zero_warning))
    throw NumericalError("a normal locus is empty (zero EDD)");
  return 0;
}

int cmd_solve_direct(const std::string& x_arg, const std::string& y_arg, const CommonOpts& opts) {
  PolySystem sx = load_system(x_arg);
  PolySystem sy = load_system(y_arg);
  bnk::BottleneckRunConfig cfg;
  opts.apply(cfg);
  check_dimensions(sx, sy, cfg);
  bnk::SquaredSystem f = bnk::square_system(sx, bnk::Rng(opts.seed).derive("X").seed());
  bnk::SquaredSystem g = bnk::square_system(sy, bnk::Rng(opts.seed).derive("Y").seed());
  bnk::DirectSolveReport report = bnk::solve_direct(f, g, cfg, opts.seed);
  std::cout << bnk::direct_report_json(report, opts.timing).dump(2) << "\n";
  if (opts.strict && report.pairs.empty()) throw NumericalError("no bottleneck pairs found");
  return 0;
}

int cmd_bench(const std::string& family, const std::string& format, const CommonOpts& opts) {
  struct Row {
    std::string key, name;
    PolySystem x, y;
    bool symmetric;
  };
  std::vector<Row> rows;
  auto add = [&](std::string key, std::string name, PolySystem x, PolySystem y, bool sym) {
    if (family.empty() || family == key)
      rows.push_back({std::move(key), std::move(name), std::move(x), std::move(y), sym});
  };
  add("quadric-surfaces", "Two quadric surfaces (C^3)", bnk::random_hypersurface(3, 2, 11),
      bnk::random_hypersurface(3, 2, 12), false);
  add("rational-normal-curves", "Two rational normal curves (C^3)",
      bnk::rational_normal_curve(3, 31), bnk::rational_normal_curve(3, 32), false);
  add("cubic-surfaces", "Two cubic surfaces (C^3)", bnk::random_hypersurface(3, 3, 21),
      bnk::random_hypersurface(3, 3, 22), false);
  add("goursat", "Goursat surface (symmetric)", bnk::goursat_surface(), bnk::goursat_surface(),
      true);
  add("ellipse", "Ellipse (symmetric)", bnk::ellipse_curve(), bnk::ellipse_curve(), true);
  if (rows.empty()) throw ValidationError("unknown bench family: " + family);

  bool csv = format == "csv";
  if (csv)
    std::cout << "Example,EDD,multihom,#solutions\n";
  else {
    std::cout << "| Example | EDD | multihom | #solutions |\n";
    std::cout << "| --- | --- | --- | --- |\n";
  }
  for (const Row& row : rows) {
    bnk::BottleneckRunConfig cfg;
    cfg.symmetric = row.symmetric;
    opts.apply(cfg);
    bnk::RunReport r = bnk::run_bottlenecks(row.x, row.y, cfg, opts.seed);
    std::string edd = std::to_string(r.locus_x.edd);
    if (!row.symmetric) edd += "," + std::to_string(r.locus_y.edd);
    if (csv)
      std::cout << row.name << ",\"" << edd << "\"," << r.paths << "," << r.pairs.size() << "\n";
    else
      std::cout << "| " << row.name << " | " << edd << " | " << r.paths << " | "
                << r.pairs.size() << " |\n";
  }
  return 0;
}

int cmd_sample(const std::string& x_arg, const std::vector<double>& box_vals, double spacing,
               const std::string& out_path, const CommonOpts& opts) {
  PolySystem spec = load_system(x_arg);
  int n = spec.ambient_dim();
  bnk::Box box;
  if (static_cast<int>(box_vals.size()) == 2) {
    for (int i = 0; i < n; ++i) box.intervals.emplace_back(box_vals[0], box_vals[1]);
  } else if (static_cast<int>(box_vals.size()) == 2 * n) {
    for (int i = 0; i < n; ++i)
      box.intervals.emplace_back(box_vals[2 * static_cast<size_t>(i)],
                                 box_vals[2 * static_cast<size_t>(i) + 1]);
  } else {
    throw ValidationError("--box needs lo,hi (all axes) or one lo,hi per axis");
  }
  for (auto& [lo, hi] : box.intervals)
    if (lo >= hi) throw ValidationError("--box intervals must satisfy lo < hi");

  bnk::BottleneckRunConfig cfg;
  opts.apply(cfg);
  bnk::SampleOptions sopts;
  sopts.threads = cfg.threads;
  sopts.real_tol = cfg.real_tol;
  bnk::SampleCloud cloud = bnk::sample_curve(spec, box, spacing, cfg.tracker, opts.seed, sopts);
  bnk::write_cloud_csv(cloud, out_path);
  json j{{"points", cloud.points.size()},
         {"residual_bound", cloud.residual_bound},
         {"max_gap", cloud.max_gap},
         {"out", out_path}};
  std::cout << j.dump(2) << "\n";
  if (opts.strict && cloud.points.empty()) throw NumericalError("empty sample cloud");
  return 0;
}

int cmd_components(const std::string& cloud_path, double r, const std::string& labels_out) {
  bnk::SampleCloud cloud = bnk::read_cloud_csv(cloud_path);
  bnk::RipsComponents comps = bnk::rips_components(cloud, r);
  std::cout << comps.count << "\n";
  if (!labels_out.empty()) bnk::write_cloud_csv(cloud, labels_out, &comps.labels);
  return 0;
}

std::vector<bnk::BottleneckPair> pairs_from_report(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
  if (!j.contains("pairs") || !j["pairs"].is_array())
    throw ValidationError(path + ": no \"pairs\" array");
  std::vector<bnk::BottleneckPair> pairs;
  for (const json& pj : j["pairs"]) {
    bnk::BottleneckPair p;
    auto vec = [&](const char* key) {
      const json& arr = pj.at(key);
      Eigen::VectorXcd v(static_cast<Eigen::Index>(arr.size()));
      for (size_t i = 0; i < arr.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = Cx(arr[i][0].get<double>(), arr[i][1].get<double>());
      return v;
    };
    try {
      p.x = vec("x");
      p.y = vec("y");
      p.is_real = pj.at("is_real").get<bool>();
    } catch (const json::exception& e) {
      throw ValidationError(path + ": malformed pair: " + e.what());
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

int cmd_plot(const std::string& report_path, const std::string& cloud_path,
             const std::string& prefix, std::uint64_t seed) {
  std::vector<bnk::BottleneckPair> pairs;
  if (!report_path.empty()) pairs = pairs_from_report(report_path);
  bnk::SampleCloud cloud;
  if (!cloud_path.empty()) cloud = bnk::read_cloud_csv(cloud_path);
  bnk::PlotFiles files =
      bnk::emit_plot(pairs, cloud_path.empty() ? nullptr : &cloud, prefix, seed);
  if (!files.notice.empty()) {
    std::cout << files.notice << "\n";
    return 0;
  }
  for (const std::string& f : files.written) std::cout << f << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isolated bottlenecks of algebraic varieties by homotopy continuation"};
  app.require_subcommand(1);

  std::string x_arg, y_arg, project_path, plot_prefix;
  std::string family, format = "md";
  std::string cloud_path, out_path = "cloud.csv", labels_out, report_path, prefix = "plot";
  std::vector<double> box_vals;
  double spacing = 0.1, radius = 0.0;
  bool symmetric = false;
  CommonOpts opts;

  CLI::App* nl = app.add_subcommand("normal-locus", "solve the normal locus of one variety");
  nl->add_option("--x", x_arg, "system file or built-in family")->required();
  nl->add_option("--project", project_path, "CSV projection matrix M");
  opts.attach(nl);

  CLI::App* bn = app.add_subcommand("bottlenecks", "two-stage bottleneck homotopy");
  bn->add_option("--x", x_arg, "first system (file or family)")->required();
  bn->add_option("--y", y_arg, "second system (defaults to --x with --symmetric)");
  bn->add_flag("--symmetric", symmetric, "X = Y mode: unordered pairs, diagonal discarded");
  bn->add_option("--project", project_path, "CSV projection matrix M");
  bn->add_option("--plot", plot_prefix, "also write plot files with this prefix");
  opts.attach(bn);

  CLI::App* sd = app.add_subcommand("solve-direct", "naive multihomogeneous baseline solver");
  sd->add_option("--x", x_arg, "first system (file or family)")->required();
  sd->add_option("--y", y_arg, "second system (file or family)")->required();
  opts.attach(sd);

  CLI::App* be = app.add_subcommand("bench", "benchmark table over the built-in examples");
  be->add_option("--family", family,
                 "run one row: quadric-surfaces | rational-normal-curves | cubic-surfaces | "
                 "goursat | ellipse");
  be->add_option("--format", format, "md or csv")->check(CLI::IsMember({"md", "csv"}));
  opts.attach(be);

  CLI::App* sa = app.add_subcommand("sample", "sample the real locus of a curve on a grid");
  sa->add_option("--x", x_arg, "curve system (file or family)")->required();
  sa->add_option("--box", box_vals, "lo,hi for all axes, or lo,hi per axis")
      ->required()
      ->delimiter(',');
  sa->add_option("--spacing", spacing, "hyperplane grid spacing")->required();
  sa->add_option("--out", out_path, "output CSV path");
  opts.attach(sa);

  CLI::App* co = app.add_subcommand("components", "Vietoris-Rips component count of a cloud");
  co->add_option("--cloud", cloud_path, "point cloud CSV")->required();
  co->add_option("--r", radius, "Rips parameter r (edges below 2r)")->required();
  co->add_option("--labels-out", labels_out, "write the cloud with a label column here");

  CLI::App* pl = app.add_subcommand("plot", "plot files from a saved report and/or cloud");
  pl->add_option("--report", report_path, "JSON report with a pairs array");
  pl->add_option("--cloud", cloud_path, "point cloud CSV");
  pl->add_option("--prefix", prefix, "output file prefix");
  pl->add_option("--seed", opts.seed, "seed for the R^3 projection above dimension 3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (nl->parsed()) return cmd_normal_locus(x_arg, opts, project_path);
    if (bn->parsed()) {
      if (symmetric && !y_arg.empty() && y_arg != x_arg)
        throw ValidationError("--symmetric requires --y to be absent or equal to --x");
      if (!symmetric && y_arg.empty()) throw ValidationError("--y is required without --symmetric");
      opts.project_path = project_path;
      return cmd_bottlenecks(x_arg, y_arg, symmetric, opts, plot_prefix);
    }
    if (sd->parsed()) return cmd_solve_direct(x_arg, y_arg, opts);
    if (be->parsed()) return cmd_bench(family, format, opts);
    if (sa->parsed()) return cmd_sample(x_arg, box_vals, spacing, out_path, opts);
    if (co->parsed()) return cmd_components(cloud_path, radius, labels_out);
    if (pl->parsed()) return cmd_plot(report_path, cloud_path, prefix, opts.seed);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const bnk::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
