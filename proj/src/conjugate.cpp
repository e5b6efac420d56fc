#include "logdiv/conjugate.hpp"

#include <cmath>

#include "logdiv/errors.hpp"
#include "logdiv/newton.hpp"

namespace logdiv {

ConjugateResult legendre(const LogConcaveFunction& f, const Eigen::VectorXd& y) {
  const int d = f.dimension();
  if (y.size() != d) throw DimensionMismatch("legendre: argument dimension mismatch");
  if (!y.allFinite()) throw DomainError("legendre: argument must be finite");

  Eigen::VectorXd start = Eigen::VectorXd::Zero(d);
  if (const GaussianParams* params = f.gaussian_params()) {
    start = params->matrix.llt().solve(y);
  }

  // minimize psi(x) - <x,y>; the negated optimum is psi*(y)
  auto objective = [&f, &y](const Eigen::VectorXd& x) {
    PotentialJet jet = f.jet(x);
    jet.value -= x.dot(y);
    jet.gradient -= y;
    return jet;
  };
  const double tol = 1e-10 * (1.0 + y.norm());
  NewtonResult fit = newton_minimize(objective, std::move(start), tol);

  ConjugateResult result;
  result.value = -fit.value;
  result.maximizer = std::move(fit.argmin);
  result.iterations = fit.iterations;
  result.residual = fit.gradient.norm();
  return result;
}

LogConcaveFunction dual_function(const LogConcaveFunction& f) {
  if (const GaussianParams* params = f.gaussian_params()) {
    return LogConcaveFunction::gaussian(params->dual());
  }
  const int d = f.dimension();
  auto dual_jet = [f, d](const Eigen::VectorXd& y) {
    const ConjugateResult conj = legendre(f, y);
    PotentialJet jet;
    jet.value = conj.value;
    jet.gradient = conj.maximizer;
    const Eigen::MatrixXd primal_hess = f.hessian(conj.maximizer);
    Eigen::MatrixXd inv = primal_hess.llt().solve(Eigen::MatrixXd::Identity(d, d));
    jet.hessian = (inv + inv.transpose()) / 2.0;
    return jet;
  };
  return LogConcaveFunction::custom(d, std::move(dual_jet), -f.log_scale(),
                                    f.describe() + "+dual");
}

double DualityResiduals::max() const {
  return std::max(gradient_identity, std::max(hessian_identity, fenchel_identity));
}

DualityResiduals check_duality_identities(const LogConcaveFunction& f,
                                          const std::vector<Eigen::VectorXd>& points) {
  DualityResiduals res;
  const int d = f.dimension();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(d, d);
  for (const Eigen::VectorXd& point : points) {
    // grad psi* o grad psi = Id, solved at y = grad psi(point)
    const Eigen::VectorXd y_fwd = f.gradient(point);
    const ConjugateResult back = legendre(f, y_fwd);
    res.gradient_identity =
        std::max(res.gradient_identity, (back.maximizer - point).norm());

    // at y = point: Fenchel identity and the Hessian product
    const ConjugateResult conj = legendre(f, point);
    const double fenchel =
        std::abs(f.potential(conj.maximizer) -
                 (point.dot(conj.maximizer) - conj.value));
    res.fenchel_identity = std::max(res.fenchel_identity, fenchel);

    const Eigen::MatrixXd primal_hess = f.hessian(conj.maximizer);
    const Eigen::MatrixXd dual_hess =
        primal_hess.llt().solve(identity);
    const double hess_resid =
        (primal_hess * dual_hess - identity).cwiseAbs().maxCoeff();
    res.hessian_identity = std::max(res.hessian_identity, hess_resid);
  }
  return res;
}

}  // namespace logdiv
