#pragma once

#include <optional>

#include "logdiv/function.hpp"
#include "logdiv/generator.hpp"
#include "logdiv/quadrature.hpp"

namespace logdiv {

/// A pairing of log-concave functions with generators. The weight
/// denominator n_w defaults to the vector length; it is explicit because
/// closed-form constants assume the vector length equals the dimension,
/// and callers may need to decouple the two.
struct DivergenceInstance {
  FunctionVector functions;
  GeneratorVector generators;
  double weight_denominator;
  /// Evaluate with the roles of the two densities exchanged, i.e. with
  /// integrand factors p_i f_i(q_i/p_i) instead of q_i f_i(p_i/q_i).
  bool swap_roles = false;

  DivergenceInstance(FunctionVector fns, GeneratorVector gens,
                     std::optional<double> n_w = std::nullopt);
  int size() const { return static_cast<int>(functions.size()); }
};

/// int phi dx, integrated in the function's own Laplace frame.
IntegrationResult function_mass(const LogConcaveFunction& f, const QuadratureSpec& spec);

/// Classical divergence int q f(p/q) dx of one function.
IntegrationResult f_divergence(const Generator& f, const LogConcaveFunction& phi,
                               const QuadratureSpec& spec);

/// Mixed divergence int prod_i [q_i f_i(p_i/q_i)]^{1/n_w} dx.
/// Throws NegativeFactor when a factor under a fractional exponent is
/// negative (plain log generators are admissible only for the classical
/// and clamped forms).
IntegrationResult mixed_f_divergence(const DivergenceInstance& instance,
                                     const QuadratureSpec& spec);

/// Vector Kullback-Leibler form int prod_i [q_i log(p_i/q_i)]_+^{1/n} dx.
IntegrationResult mixed_kl_divergence(const FunctionVector& functions,
                                      const QuadratureSpec& spec);

/// Two-function i-th mixed divergence with exponents i/n_w and (n_w-i)/n_w.
/// Exact factor-dropping at i = 0 and i = n_w reproduces the classical
/// divergences of the respective single functions.
IntegrationResult ith_mixed_f_divergence(const Generator& f1, const Generator& f2,
                                         const LogConcaveFunction& phi1,
                                         const LogConcaveFunction& phi2, double i, double n_w,
                                         const QuadratureSpec& spec);

/// The scale-derivative invariant of the surface-area family, computed
/// from its relative-entropy identity:
///   Omega = exp[ KL(geometric mean) / mass + int log(prod det H_i^{1/n}
///                / det(mean H)) dmu ],
/// where H_i are the potential Hessians and mu is the normalized
/// geometric-mean measure. The KL term uses the signed integrand
/// q log(p/q), with no positive-part clamp.
IntegrationResult omega_invariant(const FunctionVector& functions, const QuadratureSpec& spec);

/// Geometric mean function (prod phi_i)^{1/n} as a log-concave function.
LogConcaveFunction geometric_mean_function(const FunctionVector& functions);

}  // namespace logdiv
