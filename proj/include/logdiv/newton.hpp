#pragma once

#include <functional>

#include <Eigen/Dense>

#include "logdiv/function.hpp"

namespace logdiv {

struct NewtonResult {
  Eigen::VectorXd argmin;
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
  int iterations = 0;
};

/// Damped Newton minimization of a smooth strictly convex function given by
/// a jet evaluator. Backtracking line search with Armijo parameter 1e-4 and
/// step halving. Stops when |gradient| <= grad_tol.
/// Throws OptimizationFailed at the iteration cap and NonConvexPotential if
/// a Hessian fails to factorize.
NewtonResult newton_minimize(const std::function<PotentialJet(const Eigen::VectorXd&)>& jet,
                             Eigen::VectorXd start, double grad_tol, int max_iterations = 100);

}  // namespace logdiv
