#include "logdiv/surface.hpp"

#include <cmath>
#include <limits>

namespace logdiv {

namespace {

/// log of one surface-area factor at x:
///   (2 lambda - 1) (psi - log c) - lambda <x, grad psi> + lambda log det H
/// which equals log q + lambda log(p/q).
double log_surface_factor(const LogConcaveFunction& f, const Eigen::VectorXd& x,
                          double lambda) {
  const LogDensityData data = log_density_data(f, x);
  if (lambda < 0.0 && data.log_ratio == -std::numeric_limits<double>::infinity()) {
    throw SingularHessian("degenerate Hessian with negative lambda");
  }
  if (lambda == 0.0) return data.log_q;
  return data.log_q + lambda * data.log_ratio;
}

LaplaceFrame mean_potential_frame(const FunctionVector& functions,
                                  const std::vector<double>& weights) {
  validate_function_vector(functions);
  const int d = functions.front().dimension();
  auto jet = [functions, weights](const Eigen::VectorXd& x) {
    PotentialJet sum;
    sum.value = 0.0;
    sum.gradient = Eigen::VectorXd::Zero(x.size());
    sum.hessian = Eigen::MatrixXd::Zero(x.size(), x.size());
    for (std::size_t i = 0; i < functions.size(); ++i) {
      if (weights[i] == 0.0) continue;
      const PotentialJet j = functions[i].jet(x);
      sum.value += weights[i] * j.value;
      sum.gradient += weights[i] * j.gradient;
      sum.hessian += weights[i] * j.hessian;
    }
    return sum;
  };
  return laplace_fit(d, jet);
}

IntegrationResult integrate_surface(const FunctionVector& functions,
                                    const std::vector<double>& weights, double lambda,
                                    const QuadratureSpec& spec) {
  const LaplaceFrame frame = mean_potential_frame(functions, weights);
  auto integrand = [&functions, &weights, lambda](const Eigen::VectorXd& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < functions.size(); ++i) {
      if (weights[i] == 0.0) continue;
      s += weights[i] * log_surface_factor(functions[i], x, lambda);
    }
    return std::exp(s);
  };
  return integrate(integrand, frame, spec);
}

SurfaceLimitResult maximize_ratio(const FunctionVector& functions,
                                  const std::vector<double>& weights,
                                  const QuadratureSpec& spec) {
  const LaplaceFrame frame = mean_potential_frame(functions, weights);
  auto objective = [&functions, &weights](const Eigen::VectorXd& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < functions.size(); ++i) {
      if (weights[i] == 0.0) continue;
      s += weights[i] * log_density_data(functions[i], x).log_ratio;
    }
    return std::exp(s);
  };
  const MaximizeResult best = maximize(objective, frame, spec);
  return SurfaceLimitResult{best.value, best.argmax};
}

}  // namespace

IntegrationResult as_lambda(const FunctionVector& functions, double lambda,
                            const QuadratureSpec& spec) {
  validate_function_vector(functions);
  const std::vector<double> weights(functions.size(),
                                    1.0 / static_cast<double>(functions.size()));
  return integrate_surface(functions, weights, lambda, spec);
}

IntegrationResult as_lambda_i(const LogConcaveFunction& phi1, const LogConcaveFunction& phi2,
                              double lambda, double i, double n_w, const QuadratureSpec& spec) {
  if (!(n_w > 0.0)) throw DomainError("weight denominator must be positive");
  const FunctionVector functions{phi1, phi2};
  const std::vector<double> weights{i / n_w, (n_w - i) / n_w};
  return integrate_surface(functions, weights, lambda, spec);
}

SurfaceLimitResult as_infinity(const FunctionVector& functions, const QuadratureSpec& spec) {
  validate_function_vector(functions);
  const std::vector<double> weights(functions.size(),
                                    1.0 / static_cast<double>(functions.size()));
  return maximize_ratio(functions, weights, spec);
}

SurfaceLimitResult as_minus_infinity(const FunctionVector& functions,
                                     const QuadratureSpec& spec) {
  SurfaceLimitResult sup = as_infinity(functions, spec);
  sup.value = 1.0 / sup.value;
  return sup;
}

SurfaceLimitResult as_infinity_i(const LogConcaveFunction& phi1, const LogConcaveFunction& phi2,
                                 double i, double n_w, const QuadratureSpec& spec) {
  if (!(n_w > 0.0)) throw DomainError("weight denominator must be positive");
  const FunctionVector functions{phi1, phi2};
  const std::vector<double> weights{i / n_w, (n_w - i) / n_w};
  return maximize_ratio(functions, weights, spec);
}

}  // namespace logdiv
