#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bnk/homotopy.hpp"
#include "bnk/rng.hpp"

namespace bnk {

enum class PathStatus { Converged, Singular, Diverged, Truncated };

const char* to_string(PathStatus s);

struct TrackerConfig {
  double newton_tol = 1e-10;
  int max_newton_iters = 3;
  double initial_step = 0.05;
  double min_step = 1e-14;
  double max_step = 0.1;
  int step_expand_after = 4;  // consecutive accepted steps before doubling
  double step_cut_factor = 0.5;
  double divergence_norm = 1e8;  // max coordinate norm standing in for infinity
  double endgame_t = 1e-6;
  double final_tol = 1e-12;
  double singular_cond = 1e12;
  int max_steps = 10000;
};

struct PathOutcome {
  PathStatus status = PathStatus::Truncated;
  Eigen::VectorXcd endpoint;
  double t_final = 1.0;
  double residual = 0.0;
  double condition_estimate = 0.0;
  int steps = 0;
  int start_index = -1;
};

struct NewtonResult {
  Eigen::VectorXcd z;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  double cond = 0.0;
};

// Undamped Newton at fixed t until ||H||_inf < tol or the iteration budget
// runs out; returns the last iterate either way.
NewtonResult newton_correct(const HomotopyProblem& hp, double t, Eigen::VectorXcd z, double tol,
                            int max_iters);

// Adaptive RK4 predictor / Newton corrector from t = 1 to t = 0.
PathOutcome track_path(const HomotopyProblem& hp, const Eigen::VectorXcd& start,
                       const TrackerConfig& cfg);

// One outcome per start, order-aligned with the input; paths are independent
// and may run on worker threads (threads = 0 picks the hardware count).
std::vector<PathOutcome> track_all(const HomotopyProblem& hp,
                                   const std::vector<Eigen::VectorXcd>& starts,
                                   const TrackerConfig& cfg, int threads = 0);

// Re-track the paths that did not converge along homotopies rebuilt with
// fresh unit gammas drawn from gamma_rng. This is sound whenever the start
// points solve the t = 1 system for every gamma, which holds for both the
// gamma-trick and the bottleneck homotopies. An outcome is replaced when the
// retry converges, or when a singular retry beats a diverged/truncated one.
// Returns the number of outcomes upgraded to Converged.
int rescue_failed_paths(std::vector<PathOutcome>& outcomes,
                        const std::vector<Eigen::VectorXcd>& starts,
                        const std::function<HomotopyProblem(Cx)>& rebuild, Rng gamma_rng,
                        const TrackerConfig& cfg, int threads, int max_attempts = 4);

}  // namespace bnk
