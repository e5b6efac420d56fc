#include "logdiv/newton.hpp"

#include <cmath>

#include "logdiv/errors.hpp"

namespace logdiv {

NewtonResult newton_minimize(const std::function<PotentialJet(const Eigen::VectorXd&)>& jet,
                             Eigen::VectorXd start, double grad_tol, int max_iterations) {
  constexpr double kArmijo = 1e-4;
  constexpr int kMaxHalvings = 60;

  Eigen::VectorXd x = std::move(start);
  PotentialJet cur = jet(x);
  for (int iter = 0; iter <= max_iterations; ++iter) {
    const double gnorm = cur.gradient.norm();
    if (gnorm <= grad_tol) {
      return NewtonResult{x, cur.value, cur.gradient, cur.hessian, iter};
    }
    if (iter == max_iterations) break;

    Eigen::LLT<Eigen::MatrixXd> llt(cur.hessian);
    if (llt.info() != Eigen::Success) {
      throw NonConvexPotential("Newton step: Hessian is not positive definite");
    }
    const Eigen::VectorXd step = llt.solve(-cur.gradient);
    const double directional = cur.gradient.dot(step);  // < 0 for a descent direction

    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h < kMaxHalvings; ++h) {
      Eigen::VectorXd candidate = x + t * step;
      PotentialJet trial = jet(candidate);
      // Armijo, with a gradient-halving fallback for the terminal phase
      // where the predicted decrease is below the roundoff resolution of
      // the objective and the sufficient-decrease test turns into noise.
      const bool armijo =
          std::isfinite(trial.value) && trial.value <= cur.value + kArmijo * t * directional;
      const bool terminal =
          std::isfinite(trial.value) && trial.gradient.norm() <= 0.5 * gnorm &&
          trial.value <= cur.value + 1e-12 * (1.0 + std::abs(cur.value));
      if (armijo || terminal) {
        x = std::move(candidate);
        cur = std::move(trial);
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // step stalled below line-search resolution; accept only if converged
      if (gnorm <= grad_tol) {
        return NewtonResult{x, cur.value, cur.gradient, cur.hessian, iter};
      }
      throw OptimizationFailed("Newton line search stalled");
    }
  }
  throw OptimizationFailed("Newton iteration cap reached");
}

}  // namespace logdiv
