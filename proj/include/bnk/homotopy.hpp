#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>

#include "bnk/poly.hpp"

namespace bnk {

// A square family H(z, t) with Jacobians in z and t, tracked from t = 1 down
// to t = 0. Evaluators must be safe to call concurrently.
struct HomotopyProblem {
  int dim = 0;
  std::string label;
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&, double)> h;
  std::function<Eigen::MatrixXcd(const Eigen::VectorXcd&, double)> jz;
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&, double)> jt;
};

// H(z, t) = t * t_part(z) + const_part(z). All homotopies in this project are
// of this form once the gamma substitution s = gamma t / (1 + (gamma-1) t)
// has been baked into the equations.
HomotopyProblem linear_t_homotopy(PolySystem t_part, PolySystem const_part, std::string label);

// Gamma-trick homotopy H = gamma t S + (1 - t) T from a start system S with
// known roots to the target T.
HomotopyProblem gamma_homotopy(const PolySystem& start, const PolySystem& target, Cx gamma,
                               std::string label);

}  // namespace bnk
