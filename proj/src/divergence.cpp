#include "logdiv/divergence.hpp"

#include <cmath>
#include <limits>

#include "logdiv/errors.hpp"

namespace logdiv {

namespace {

/// Jet of a weighted sum of normalized potentials; the reference frame for
/// every product integrand, since the q-part decays like e^{-sum w_i psi_i}.
LogConcaveFunction::JetFn weighted_potential_jet(const FunctionVector& functions,
                                                 std::vector<double> weights) {
  return [functions, weights](const Eigen::VectorXd& x) {
    const int d = static_cast<int>(x.size());
    PotentialJet sum;
    sum.value = 0.0;
    sum.gradient = Eigen::VectorXd::Zero(d);
    sum.hessian = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < functions.size(); ++i) {
      if (weights[i] == 0.0) continue;
      const PotentialJet jet = functions[i].jet(x);
      sum.value += weights[i] * jet.value;
      sum.gradient += weights[i] * jet.gradient;
      sum.hessian += weights[i] * jet.hessian;
    }
    return sum;
  };
}

/// Product integrand exp(sum_i w_i [log q_i + log f_i(ratio_i)]), assembled
/// in the log domain so that power generators stay exact where the factor
/// value alone would overflow. Zero weights are skipped entirely, which
/// makes the boundary collapses of the i-th forms exact.
std::function<double(const Eigen::VectorXd&)> product_integrand(
    const FunctionVector& functions, const GeneratorVector& generators,
    std::vector<double> weights, bool swap_roles) {
  return [functions, generators, weights, swap_roles](const Eigen::VectorXd& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < functions.size(); ++i) {
      if (weights[i] == 0.0) continue;
      const LogDensityData data = log_density_data(functions[i], x);
      const double log_t = swap_roles ? -data.log_ratio : data.log_ratio;
      const double log_density = swap_roles ? data.log_q + data.log_ratio : data.log_q;
      const double log_f = generators[i].log_eval_given_log(log_t);
      if (std::isnan(log_f)) {
        throw NegativeFactor("factor " + std::to_string(i) + " with generator " +
                             generators[i].name() + " is negative under a product exponent");
      }
      s += weights[i] * (log_density + log_f);
    }
    return std::exp(s);
  };
}

LaplaceFrame frame_for(const FunctionVector& functions, const std::vector<double>& weights) {
  validate_function_vector(functions);
  const int d = functions.front().dimension();
  return laplace_fit(d, weighted_potential_jet(functions, weights));
}

}  // namespace

DivergenceInstance::DivergenceInstance(FunctionVector fns, GeneratorVector gens,
                                       std::optional<double> n_w)
    : functions(std::move(fns)), generators(std::move(gens)) {
  validate_function_vector(functions);
  if (functions.size() != generators.size()) {
    throw DimensionMismatch("one generator per function required");
  }
  weight_denominator = n_w.value_or(static_cast<double>(functions.size()));
  if (!(weight_denominator > 0.0)) {
    throw DomainError("weight denominator must be positive");
  }
}

IntegrationResult function_mass(const LogConcaveFunction& f, const QuadratureSpec& spec) {
  const LaplaceFrame frame =
      laplace_fit(f.dimension(), [&f](const Eigen::VectorXd& x) { return f.jet(x); });
  return integrate([&f](const Eigen::VectorXd& x) { return std::exp(f.log_value(x)); }, frame,
                   spec);
}

IntegrationResult f_divergence(const Generator& f, const LogConcaveFunction& phi,
                               const QuadratureSpec& spec) {
  const LaplaceFrame frame =
      laplace_fit(phi.dimension(), [&phi](const Eigen::VectorXd& x) { return phi.jet(x); });
  auto integrand = [&f, &phi](const Eigen::VectorXd& x) {
    const LogDensityData data = log_density_data(phi, x);
    return std::exp(data.log_q) * f.eval_given_log(data.log_ratio);
  };
  return integrate(integrand, frame, spec);
}

IntegrationResult mixed_f_divergence(const DivergenceInstance& instance,
                                     const QuadratureSpec& spec) {
  const std::vector<double> weights(instance.functions.size(),
                                    1.0 / instance.weight_denominator);
  const LaplaceFrame frame = frame_for(instance.functions, weights);
  return integrate(
      product_integrand(instance.functions, instance.generators, weights, instance.swap_roles),
      frame, spec);
}

IntegrationResult mixed_kl_divergence(const FunctionVector& functions,
                                      const QuadratureSpec& spec) {
  GeneratorVector generators(functions.size(), Generator::log_plus());
  // The clamped factors are only C^0 across the [.]_+ boundary, so tensor
  // quadrature converges algebraically there; cap the escalation target
  // accordingly. The reported error estimate stays the measured one.
  QuadratureSpec kl_spec = spec;
  kl_spec.target_rel_error = std::max(spec.target_rel_error, 1e-3);
  return mixed_f_divergence(DivergenceInstance(functions, std::move(generators)), kl_spec);
}

IntegrationResult ith_mixed_f_divergence(const Generator& f1, const Generator& f2,
                                         const LogConcaveFunction& phi1,
                                         const LogConcaveFunction& phi2, double i, double n_w,
                                         const QuadratureSpec& spec) {
  if (!(n_w > 0.0)) throw DomainError("weight denominator must be positive");
  const FunctionVector functions{phi1, phi2};
  const GeneratorVector generators{f1, f2};
  const std::vector<double> weights{i / n_w, (n_w - i) / n_w};
  const LaplaceFrame frame = frame_for(functions, weights);
  return integrate(product_integrand(functions, generators, weights, false), frame, spec);
}

LogConcaveFunction geometric_mean_function(const FunctionVector& functions) {
  validate_function_vector(functions);
  const int d = functions.front().dimension();
  const double n = static_cast<double>(functions.size());
  double log_scale = 0.0;
  for (const auto& f : functions) log_scale += f.log_scale() / n;
  const std::vector<double> weights(functions.size(), 1.0 / n);
  return LogConcaveFunction::custom(d, weighted_potential_jet(functions, weights), log_scale,
                                    "geometric-mean");
}

IntegrationResult omega_invariant(const FunctionVector& functions, const QuadratureSpec& spec) {
  validate_function_vector(functions);
  const double n = static_cast<double>(functions.size());
  const LogConcaveFunction mean = geometric_mean_function(functions);
  const LaplaceFrame frame = laplace_fit(
      mean.dimension(), [&mean](const Eigen::VectorXd& x) { return mean.jet(x); });

  auto mass_integrand = [&mean](const Eigen::VectorXd& x) {
    return std::exp(mean.log_value(x));
  };
  const IntegrationResult mass = integrate(mass_integrand, frame, spec);
  if (!(mass.value > 0.0)) throw IntegralDiverged("geometric mean has nonpositive mass");

  // unclamped relative entropy of the geometric-mean density pair
  const Generator log_gen = Generator::log();
  auto kl_integrand = [&mean, &log_gen](const Eigen::VectorXd& x) {
    const LogDensityData data = log_density_data(mean, x);
    return std::exp(data.log_q) * log_gen.eval_given_log(data.log_ratio);
  };
  const IntegrationResult kl = integrate(kl_integrand, frame, spec);

  // determinant defect of the Hessian average against the individual ones
  auto det_integrand = [&functions, &mean, n](const Eigen::VectorXd& x) {
    double log_gm_det = 0.0;
    Eigen::MatrixXd mean_hess;
    for (std::size_t i = 0; i < functions.size(); ++i) {
      const PotentialJet jet = functions[i].jet(x);
      Eigen::LLT<Eigen::MatrixXd> llt(jet.hessian);
      if (llt.info() != Eigen::Success) {
        throw SingularHessian("potential Hessian not positive definite");
      }
      log_gm_det +=
          2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum() / n;
      if (i == 0) {
        mean_hess = jet.hessian / n;
      } else {
        mean_hess += jet.hessian / n;
      }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(mean_hess);
    if (llt.info() != Eigen::Success) {
      throw SingularHessian("mean Hessian not positive definite");
    }
    const double log_mean_det =
        2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return std::exp(mean.log_value(x)) * (log_gm_det - log_mean_det);
  };
  const IntegrationResult det_term = integrate(det_integrand, frame, spec);

  const double exponent = kl.value / mass.value + det_term.value / mass.value;
  IntegrationResult result;
  result.scheme = spec.scheme;
  result.value = std::exp(exponent);
  // first-order error propagation through the exponent
  const double exp_err = (kl.error + det_term.error +
                          std::abs(exponent) * mass.error) /
                         mass.value;
  result.error = result.value * exp_err;
  result.evaluations = mass.evaluations + kl.evaluations + det_term.evaluations;
  return result;
}

}  // namespace logdiv
