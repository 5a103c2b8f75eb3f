#include "bnk/tracker.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace bnk {

namespace {

double inf_norm(const Eigen::VectorXcd& v) { return v.lpNorm<Eigen::Infinity>(); }

double cond_from_lu(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu) {
  double rc = lu.rcond();
  if (!(rc > 0.0)) return 1e300;
  return 1.0 / rc;
}

}  // namespace

const char* to_string(PathStatus s) {
  switch (s) {
    case PathStatus::Converged: return "converged";
    case PathStatus::Singular: return "singular";
    case PathStatus::Diverged: return "diverged";
    case PathStatus::Truncated: return "truncated";
  }
  return "unknown";
}

NewtonResult newton_correct(const HomotopyProblem& hp, double t, Eigen::VectorXcd z, double tol,
                            int max_iters) {
  NewtonResult r;
  Eigen::VectorXcd h = hp.h(z, t);
  double res = h.allFinite() ? inf_norm(h) : std::numeric_limits<double>::infinity();
  while (r.iterations < max_iters && res >= tol && std::isfinite(res)) {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(hp.jz(z, t));
    r.cond = cond_from_lu(lu);
    Eigen::VectorXcd dz = lu.solve(-h);
    if (!dz.allFinite()) break;
    z += dz;
    ++r.iterations;
    h = hp.h(z, t);
    res = h.allFinite() ? inf_norm(h) : std::numeric_limits<double>::infinity();
  }
  if (r.cond == 0.0 && z.allFinite()) {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(hp.jz(z, t));
    r.cond = cond_from_lu(lu);
  }
  r.z = std::move(z);
  r.residual = res;
  r.converged = std::isfinite(res) && res < tol && r.z.allFinite();
  return r;
}

namespace {

// Davidenko velocity z' = -Jz^{-1} Jt
bool velocity(const HomotopyProblem& hp, const Eigen::VectorXcd& z, double t,
              Eigen::VectorXcd& v) {
  if (!z.allFinite()) return false;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(hp.jz(z, t));
  v = lu.solve(-hp.jt(z, t));
  return v.allFinite();
}

// One RK4 predictor / Newton corrector step from (z, t) to t_new.
bool attempt_step(const HomotopyProblem& hp, const TrackerConfig& cfg, Eigen::VectorXcd& z,
                  double t, double t_new, double corrector_tol) {
  double dt = t_new - t;
  Eigen::VectorXcd k1, k2, k3, k4;
  if (!velocity(hp, z, t, k1)) return false;
  if (!velocity(hp, z + (0.5 * dt) * k1, t + 0.5 * dt, k2)) return false;
  if (!velocity(hp, z + (0.5 * dt) * k2, t + 0.5 * dt, k3)) return false;
  if (!velocity(hp, z + dt * k3, t_new, k4)) return false;
  Eigen::VectorXcd zp = z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!zp.allFinite()) return false;
  double predictor_move = (zp - z).norm();
  NewtonResult r = newton_correct(hp, t_new, zp, corrector_tol, cfg.max_newton_iters);
  if (!r.converged) return false;
  // guard against hopping onto a neighboring path: a healthy corrector moves
  // far less than the predictor did
  if ((r.z - zp).norm() > std::max(predictor_move, 1e-8)) return false;
  z = std::move(r.z);
  return true;
}

PathOutcome finish(PathStatus st, Eigen::VectorXcd z, double t, double res, double cond,
                   int steps) {
  PathOutcome out;
  out.status = st;
  out.endpoint = std::move(z);
  out.t_final = t;
  out.residual = res;
  out.condition_estimate = cond;
  out.steps = steps;
  return out;
}

double residual_at(const HomotopyProblem& hp, const Eigen::VectorXcd& z, double t) {
  if (!z.allFinite()) return std::numeric_limits<double>::infinity();
  Eigen::VectorXcd h = hp.h(z, t);
  return h.allFinite() ? inf_norm(h) : std::numeric_limits<double>::infinity();
}

// End phase once t has dropped below endgame_t. Regular endpoints converge
// quadratically under plain Newton at t = 0. When that fails (endpoint
// singular or on a positive-dimensional component) we track further toward
// t = 0 and refine with a damped minimum-norm Gauss-Newton, which converges
// to points of the solution set even where the Jacobian is rank-deficient.
PathOutcome endgame(const HomotopyProblem& hp, const TrackerConfig& cfg, Eigen::VectorXcd z,
                    double t, int steps) {
  // Newton at t = 0 may only move the point about as far as the rest of the
  // path would (proportional to t); anything larger means it hopped into the
  // basin of a different solution and the slow descent must decide instead.
  auto newton_move_cap = [&](const Eigen::VectorXcd& at, double from_t) {
    return std::max(1e2 * from_t, 1e-8) * (1.0 + inf_norm(at));
  };
  // quadratic-basin check: at a regular root one more Newton step is
  // negligible, at a multiple root steps only contract geometrically (and
  // the condition number of a 1x1 Jacobian is blind to that)
  auto quadratic_at = [&](const Eigen::VectorXcd& at) {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(hp.jz(at, 0.0));
    Eigen::VectorXcd extra = lu.solve(-hp.h(at, 0.0));
    return extra.allFinite() && extra.norm() <= 1e-8 * (1.0 + inf_norm(at));
  };
  {
    NewtonResult r0 = newton_correct(hp, 0.0, z, cfg.final_tol, 6);
    if (r0.converged && (r0.z - z).norm() <= newton_move_cap(z, t) && quadratic_at(r0.z)) {
      if (inf_norm(r0.z) > cfg.divergence_norm)
        return finish(PathStatus::Diverged, std::move(r0.z), 0.0, r0.residual, r0.cond, steps);
      PathStatus st =
          r0.cond > cfg.singular_cond ? PathStatus::Singular : PathStatus::Converged;
      return finish(st, std::move(r0.z), 0.0, r0.residual, r0.cond, steps);
    }
  }

  // geometric approach toward t = 0
  const double t_floor = 1e-13;
  while (t > t_floor) {
    if (inf_norm(z) > cfg.divergence_norm) {
      double res = residual_at(hp, z, t);
      return finish(PathStatus::Diverged, std::move(z), t, res, 0.0, steps);
    }
    if (steps >= 2 * cfg.max_steps) break;
    double t_new = std::max(t * 0.25, t_floor);
    bool ok = false;
    for (int tries = 0; tries < 8 && !ok; ++tries) {
      ok = attempt_step(hp, cfg, z, t, t_new, cfg.newton_tol);
      if (!ok) t_new = std::sqrt(t * t_new);  // split the step in log scale
      ++steps;
    }
    if (!ok) break;
    t = t_new;
  }
  if (inf_norm(z) > cfg.divergence_norm) {
    double res = residual_at(hp, z, t);
    return finish(PathStatus::Diverged, std::move(z), t, res, 0.0, steps);
  }

  // second chance for plain Newton: the descent above may have entered a
  // quadratic convergence basin that was out of reach from endgame_t
  {
    NewtonResult r1 = newton_correct(hp, 0.0, z, cfg.final_tol, 6);
    if (r1.converged && (r1.z - z).norm() <= newton_move_cap(z, t) &&
        inf_norm(r1.z) <= cfg.divergence_norm && quadratic_at(r1.z)) {
      PathStatus st =
          r1.cond > cfg.singular_cond ? PathStatus::Singular : PathStatus::Converged;
      return finish(st, std::move(r1.z), 0.0, r1.residual, r1.cond, steps);
    }
  }

  // damped minimum-norm Gauss-Newton refinement at exactly t = 0. At
  // rank-deficient endpoints the attainable residual floors out near
  // eps * cond, well above final_tol, so acceptance as singular uses a
  // looser threshold; genuinely stalled paths sit many orders above it.
  const double singular_accept = std::max(cfg.final_tol, 1e-8);
  double res = residual_at(hp, z, 0.0);
  double cond = 1e300;
  for (int iter = 0; iter < 50 && std::isfinite(res) && res > cfg.final_tol; ++iter) {
    Eigen::MatrixXcd j = hp.jz(z, 0.0);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(j);
    Eigen::VectorXcd dz = cod.solve(-hp.h(z, 0.0));
    if (!dz.allFinite()) break;
    double scale = 1.0;
    bool improved = false;
    for (int k = 0; k < 12; ++k) {
      Eigen::VectorXcd cand = z + scale * dz;
      double cres = residual_at(hp, cand, 0.0);
      if (cres < res) {
        z = std::move(cand);
        res = cres;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) break;
  }
  {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(hp.jz(z, 0.0));
    cond = cond_from_lu(lu);
  }
  if (inf_norm(z) > cfg.divergence_norm)
    return finish(PathStatus::Diverged, std::move(z), 0.0, res, cond, steps);
  if (std::isfinite(res) && res <= singular_accept) {
    // the Gauss-Newton refinement may have pulled a stalled path close enough
    // to a regular endpoint for plain Newton to finish the job after all
    NewtonResult r2 = newton_correct(hp, 0.0, z, cfg.final_tol, 8);
    if (r2.converged && r2.cond <= cfg.singular_cond &&
        inf_norm(r2.z) <= cfg.divergence_norm &&
        (r2.z - z).norm() <= newton_move_cap(z, 1e-8) && quadratic_at(r2.z))
      return finish(PathStatus::Converged, std::move(r2.z), 0.0, r2.residual, r2.cond, steps);
    // plain Newton did not converge quadratically here, so flag singular
    return finish(PathStatus::Singular, std::move(z), 0.0, res, cond, steps);
  }
  return finish(PathStatus::Truncated, std::move(z), t, res, cond, steps);
}

}  // namespace

PathOutcome track_path(const HomotopyProblem& hp, const Eigen::VectorXcd& start,
                       const TrackerConfig& cfg) {
  Eigen::VectorXcd z = start;
  double t = 1.0;
  double h = cfg.initial_step;
  int steps = 0;
  int successes = 0;

  {
    NewtonResult r = newton_correct(hp, 1.0, z, cfg.newton_tol, cfg.max_newton_iters);
    if (r.converged) z = std::move(r.z);
  }

  while (true) {
    if (!z.allFinite() || inf_norm(z) > cfg.divergence_norm) {
      double res = residual_at(hp, z, t);
      return finish(PathStatus::Diverged, std::move(z), t, res, 0.0, steps);
    }
    if (t <= cfg.endgame_t) return endgame(hp, cfg, std::move(z), t, steps);
    if (steps >= cfg.max_steps) {
      double res = residual_at(hp, z, t);
      return finish(PathStatus::Truncated, std::move(z), t, res, 0.0, steps);
    }

    double t_new = std::max(t - h, 0.5 * cfg.endgame_t);
    Eigen::VectorXcd z_try = z;
    ++steps;
    if (attempt_step(hp, cfg, z_try, t, t_new, cfg.newton_tol)) {
      z = std::move(z_try);
      t = t_new;
      if (++successes >= cfg.step_expand_after) {
        h = std::min(h * 2.0, cfg.max_step);
        successes = 0;
      }
    } else {
      successes = 0;
      h *= cfg.step_cut_factor;
      if (h < cfg.min_step) {
        double res = residual_at(hp, z, t);
        return finish(PathStatus::Truncated, std::move(z), t, res, 0.0, steps);
      }
    }
  }
}

std::vector<PathOutcome> track_all(const HomotopyProblem& hp,
                                   const std::vector<Eigen::VectorXcd>& starts,
                                   const TrackerConfig& cfg, int threads) {
  std::vector<PathOutcome> out(starts.size());
  if (starts.empty()) return out;
  unsigned n_workers = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min<unsigned>(n_workers, starts.size());

  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= starts.size()) return;
      out[i] = track_path(hp, starts[i], cfg);
      out[i].start_index = static_cast<int>(i);
    }
  };
  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return out;
}

int rescue_failed_paths(std::vector<PathOutcome>& outcomes,
                        const std::vector<Eigen::VectorXcd>& starts,
                        const std::function<HomotopyProblem(Cx)>& rebuild, Rng gamma_rng,
                        const TrackerConfig& cfg, int threads, int max_attempts) {
  auto same_point = [](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    double scale = 1.0 + std::max(inf_norm(a), inf_norm(b));
    return (a - b).lpNorm<Eigen::Infinity>() <= 1e-6 * scale;
  };
  // Endpoints at t = 0 solve the target system for every gamma, so converged
  // endpoints from retries can be merged in as long as they are novel.
  auto is_novel = [&](const Eigen::VectorXcd& cand) {
    for (const PathOutcome& o : outcomes)
      if (o.status == PathStatus::Converged && same_point(o.endpoint, cand)) return false;
    return true;
  };

  int upgraded = 0;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    // Singular is a legitimate terminal state (for instance endpoints on a
    // positive-dimensional component, whose path limit depends on gamma), so
    // only genuinely lost paths are retried.
    std::vector<size_t> failed;
    for (size_t i = 0; i < outcomes.size(); ++i)
      if (outcomes[i].status == PathStatus::Diverged || outcomes[i].status == PathStatus::Truncated)
        failed.push_back(i);
    if (failed.empty()) break;

    // Rotating gamma permutes the start-to-endpoint correspondence, so a
    // retried start may flow to an endpoint another path already found. The
    // first attempts re-track only the failed starts; later ones re-track
    // everything so the retry run visits every endpoint, then the novel
    // converged endpoints fill the failed slots.
    bool full = attempt >= max_attempts / 2;
    HomotopyProblem hp = rebuild(gamma_rng.unit_complex());
    std::vector<Eigen::VectorXcd> retry;
    if (full) {
      retry = starts;
    } else {
      retry.reserve(failed.size());
      for (size_t i : failed) retry.push_back(starts[i]);
    }
    std::vector<PathOutcome> redo = track_all(hp, retry, cfg, threads);

    size_t slot = 0;
    for (PathOutcome& cand : redo) {
      if (slot >= failed.size()) break;
      if (cand.status != PathStatus::Converged) continue;
      if (!is_novel(cand.endpoint)) continue;
      cand.start_index = outcomes[failed[slot]].start_index;
      outcomes[failed[slot]] = std::move(cand);
      ++slot;
      ++upgraded;
    }
  }
  return upgraded;
}

}  // namespace bnk
