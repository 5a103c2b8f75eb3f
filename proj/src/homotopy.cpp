#include "bnk/homotopy.hpp"

#include <stdexcept>

namespace bnk {

HomotopyProblem linear_t_homotopy(PolySystem t_part, PolySystem const_part, std::string label) {
  int n = const_part.ambient_dim();
  if (t_part.ambient_dim() != n || t_part.polys.size() != const_part.polys.size() ||
      static_cast<int>(const_part.polys.size()) != n)
    throw std::invalid_argument("linear_t_homotopy: system must be square");

  auto a = std::make_shared<SystemEval>(std::move(t_part));
  auto b = std::make_shared<SystemEval>(std::move(const_part));

  HomotopyProblem hp;
  hp.dim = n;
  hp.label = std::move(label);
  hp.h = [a, b](const Eigen::VectorXcd& z, double t) {
    Eigen::VectorXcd va, vb;
    a->values(z, va);
    b->values(z, vb);
    return Eigen::VectorXcd(t * va + vb);
  };
  hp.jz = [a, b](const Eigen::VectorXcd& z, double t) {
    Eigen::MatrixXcd ja, jb;
    a->jacobian_at(z, ja);
    b->jacobian_at(z, jb);
    return Eigen::MatrixXcd(t * ja + jb);
  };
  hp.jt = [a](const Eigen::VectorXcd& z, double) {
    Eigen::VectorXcd va;
    a->values(z, va);
    return va;
  };
  return hp;
}

HomotopyProblem gamma_homotopy(const PolySystem& start, const PolySystem& target, Cx gamma,
                               std::string label) {
  if (start.polys.size() != target.polys.size() ||
      start.ambient_dim() != target.ambient_dim())
    throw std::invalid_argument("gamma_homotopy: start/target shape mismatch");
  // H = gamma t S + (1 - t) T = t (gamma S - T) + T
  PolySystem t_part;
  t_part.vars = target.vars;
  t_part.declared_dim = target.declared_dim;
  for (size_t i = 0; i < start.polys.size(); ++i)
    t_part.polys.push_back(start.polys[i] * gamma - target.polys[i]);
  return linear_t_homotopy(std::move(t_part), target, std::move(label));
}

}  // namespace bnk
