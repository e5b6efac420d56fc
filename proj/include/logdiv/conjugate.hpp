#pragma once

#include <vector>

#include <Eigen/Dense>

#include "logdiv/function.hpp"

namespace logdiv {

/// One Legendre-transform solve: psi*(y) = sup_x <x,y> - psi(x).
struct ConjugateResult {
  double value = 0.0;          // psi*(y) of the normalized potential
  Eigen::VectorXd maximizer;   // x* = grad psi*(y)
  int iterations = 0;
  double residual = 0.0;       // |grad psi(x*) - y|
};

/// Newton ascent on x -> <x,y> - psi(x) with Armijo backtracking.
/// Converged when the gradient residual is <= 1e-10 (1 + |y|); the
/// Fenchel identity psi(x*) + psi*(y) = <x*,y> then holds to the same
/// order. Starts from A^{-1} y for the gaussian family, else from 0.
ConjugateResult legendre(const LogConcaveFunction& f, const Eigen::VectorXd& y);

/// The dual function: potential psi*, gradient x*(y), Hessian
/// (Hess psi(x*(y)))^{-1}, and scale 1/c. Gaussian inputs map to the
/// closed-form (1/c, A^{-1}); every other family gets numeric evaluators
/// backed by legendre().
LogConcaveFunction dual_function(const LogConcaveFunction& f);

/// Max residuals over the supplied points of the three conjugacy
/// identities: grad psi* o grad psi = Id, Hess psi(grad psi*(y)) times
/// Hess psi*(y) = Id, and psi(grad psi*(y)) = <y, grad psi*(y)> - psi*(y).
struct DualityResiduals {
  double gradient_identity = 0.0;
  double hessian_identity = 0.0;
  double fenchel_identity = 0.0;
  double max() const;
};
DualityResiduals check_duality_identities(const LogConcaveFunction& f,
                                          const std::vector<Eigen::VectorXd>& points);

}  // namespace logdiv
