#pragma once

#include "logdiv/errors.hpp"
#include "logdiv/function.hpp"
#include "logdiv/quadrature.hpp"

namespace logdiv {

/// Mixed L_lambda-affine surface area
///   as_lambda = int prod_i [e^{(2 lambda - 1) psi_i - lambda <x, grad psi_i>}
///                           (det Hess psi_i)^lambda]^{1/n} dx
/// (potentials taken with their scale constants). Nonnegative for every
/// admissible vector. For lambda < 0 a degenerate Hessian raises
/// SingularHessian; integrability itself is family-dependent and surfaces
/// as IntegralDiverged.
IntegrationResult as_lambda(const FunctionVector& functions, double lambda,
                            const QuadratureSpec& spec);

/// Two-function variant with exponents i/n_w and (n_w - i)/n_w;
/// as_lambda_i(.., i = 0) collapses to as_lambda of phi2 alone and
/// i = n_w to as_lambda of phi1 alone.
IntegrationResult as_lambda_i(const LogConcaveFunction& phi1, const LogConcaveFunction& phi2,
                              double lambda, double i, double n_w, const QuadratureSpec& spec);

/// sup_x prod_i [density ratio_i(x)]^{1/n}: the lambda -> +inf endpoint.
/// Returns the best value found by grid scan plus simplex refinement; no
/// global certificate is attempted.
struct SurfaceLimitResult {
  double value = 0.0;
  Eigen::VectorXd maximizer;
};
SurfaceLimitResult as_infinity(const FunctionVector& functions, const QuadratureSpec& spec);
SurfaceLimitResult as_minus_infinity(const FunctionVector& functions,
                                     const QuadratureSpec& spec);

/// Two-function endpoint with exponents i/n_w and (n_w - i)/n_w.
SurfaceLimitResult as_infinity_i(const LogConcaveFunction& phi1, const LogConcaveFunction& phi2,
                                 double i, double n_w, const QuadratureSpec& spec);

/// Keeps the first n-m entries and repeats entry k (1-based) m times:
/// (v_1, .., v_{n-m}, v_k, .., v_k). Requires 1 <= m <= n-1 and
/// n-m < k <= n.
template <typename T>
std::vector<T> repeat_vector(const std::vector<T>& v, int m, int k) {
  const int n = static_cast<int>(v.size());
  if (m < 1 || m > n - 1) throw IndexOutOfRange("repeat count m must be in [1, n-1]");
  if (k <= n - m || k > n) throw IndexOutOfRange("repeated index k must be in (n-m, n]");
  std::vector<T> out;
  out.reserve(v.size());
  for (int i = 0; i < n - m; ++i) out.push_back(v[i]);
  for (int i = 0; i < m; ++i) out.push_back(v[k - 1]);
  return out;
}

}  // namespace logdiv
