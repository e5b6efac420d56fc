#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logdiv/conjugate.hpp"
#include "logdiv/divergence.hpp"
#include "logdiv/surface.hpp"

namespace logdiv {

enum class Verdict { Holds, Equality, Violated, Inconclusive };

std::string verdict_name(Verdict v);

/// One tolerance-aware comparison of two computed sides.
struct InequalityReport {
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs; negative means the bound looks breached
  double tolerance = 0.0;
  double equality_tolerance = 0.0;
  double quad_error = 0.0;  // propagated quadrature error estimate
  Verdict verdict = Verdict::Holds;
  std::string fingerprint;
};

/// Holds-tolerance max(1e-9, 1e-6 max(|lhs|, |rhs|)) for deterministic
/// pipelines, widened to 4x the propagated error for Monte Carlo;
/// equality-tolerance is 10x the holds-tolerance.
struct TolerancePolicy {
  double abs_floor = 1e-9;
  double relative = 1e-6;
  double equality_factor = 10.0;
  double mc_error_factor = 4.0;
};

struct CheckContext {
  QuadratureSpec quad;
  TolerancePolicy tol;
  std::string fingerprint;
};

/// Assembles a report for a one-sided bound lhs <= rhs. Verdict order:
/// equality band first (so exact-equality instances are not drowned by
/// noise), then inconclusive when the error estimate exceeds |slack|,
/// then violated/holds.
InequalityReport make_report(const std::string& check, double lhs, double rhs,
                             double quad_error, const CheckContext& ctx,
                             double relative_override = 0.0);

/// Two-sided identity lhs == rhs within rel_tol * max(|lhs|, |rhs|).
InequalityReport make_equality_report(const std::string& check, double lhs, double rhs,
                                      double quad_error, double rel_tol,
                                      const CheckContext& ctx);

// ---- individual checks (names match the report/check ids) ----

/// af_divergence: [D]^m <= prod over repeated-entry vectors, m = 1..n.
/// Gate: all generators share one curvature class.
std::vector<InequalityReport> check_af_divergence(const DivergenceInstance& instance,
                                                  const CheckContext& ctx);

/// entropy: [D]^n <= prod f_i(dual mass / mass) * mass. Gate: concave f_i.
InequalityReport check_entropy(const DivergenceInstance& instance, const CheckContext& ctx);

/// kl_bound: [D_KL]^n <= prod [log(dual mass / mass)]_+ * mass.
InequalityReport check_kl_bound(const FunctionVector& functions, const CheckContext& ctx);

/// kl_bs_bound: [D_KL]^n <= prod [log((2 pi)^d / mass^2)]_+ * mass.
/// Gate: every barycenter vanishes.
InequalityReport check_kl_bs_bound(const FunctionVector& functions, const CheckContext& ctx);

/// duality: mixed divergence of the duals under f equals the mixed
/// divergence of the primals under f*. Gate: proportional functions.
InequalityReport check_duality(const LogConcaveFunction& base, const std::vector<double>& scales,
                               const GeneratorVector& generators, const CheckContext& ctx);

/// sl_invariance: mixed divergence unchanged by a self-adjoint map with
/// |det| = 1.
InequalityReport check_sl_invariance(const DivergenceInstance& instance,
                                     const Eigen::MatrixXd& transform, const CheckContext& ctx);

/// ith_interpolation: log-convexity of i -> D(i) on a grid; reports the
/// tightest consecutive triple.
InequalityReport check_ith_interpolation(const Generator& f1, const Generator& f2,
                                         const LogConcaveFunction& phi1,
                                         const LogConcaveFunction& phi2, double n_w,
                                         const std::vector<double>& grid,
                                         const CheckContext& ctx);

/// ith_bound: entropy-type bound for the i-th form, including the two
/// reversed curvature regimes (i >= n_w and i <= 0).
InequalityReport check_ith_bound(const Generator& f1, const Generator& f2,
                                 const LogConcaveFunction& phi1, const LogConcaveFunction& phi2,
                                 double i, double n_w, const CheckContext& ctx);

/// af_surface: the surface-area counterpart of af_divergence.
std::vector<InequalityReport> check_af_surface(const FunctionVector& functions, double lambda,
                                               const CheckContext& ctx);

/// isoperimetric: [as_lambda / as_lambda(gaussian ref)]^n <= prod
/// (mass / gaussian mass)^{1-2 lambda}. Gates: lambda in [0,1], barycenters 0.
InequalityReport check_isoperimetric(const FunctionVector& functions, double lambda,
                                     const CheckContext& ctx);

/// bs_mixed: as_lambda(vec) * as_lambda(dual vec) <= (2 pi)^d.
/// Gates: lambda in [0,1], barycenters 0.
InequalityReport check_bs_mixed(const FunctionVector& functions, double lambda,
                                const CheckContext& ctx);

/// mono_surface: monotonicity family — normalized quotient increasing in
/// lambda, the three-exponent bound, and the sup-endpoint bound.
std::vector<InequalityReport> check_mono_surface(const FunctionVector& functions,
                                                 const std::vector<double>& lambdas,
                                                 const CheckContext& ctx);

/// omega_kl: log Omega <= relative-entropy term of the identity.
InequalityReport check_omega_kl(const FunctionVector& functions, const CheckContext& ctx);

/// omega_bounds: quotient bounds for Omega at sampled lambda of both signs,
/// Omega * Omega(dual) <= 1, and the alpha -> 1 limit identity checked at
/// alpha = 0.99 and 0.999 with linear extrapolation.
/// Gate: proportional functions. Negative lambdas require a gaussian base.
std::vector<InequalityReport> check_omega_bounds(const LogConcaveFunction& base,
                                                 const std::vector<double>& scales,
                                                 const std::vector<double>& lambdas,
                                                 const CheckContext& ctx);

/// mono_surface_i: as check_mono_surface for the two-function form.
std::vector<InequalityReport> check_mono_surface_i(const LogConcaveFunction& phi1,
                                                   const LogConcaveFunction& phi2, double i,
                                                   double n_w,
                                                   const std::vector<double>& lambdas,
                                                   const CheckContext& ctx);

/// interp_surface_i: log-convexity of i -> as_lambda_i plus the two
/// derived product bounds (0 <= i <= n and k <= 0).
std::vector<InequalityReport> check_interp_surface_i(const LogConcaveFunction& phi1,
                                                     const LogConcaveFunction& phi2,
                                                     double lambda, double n_w,
                                                     const std::vector<double>& grid,
                                                     const CheckContext& ctx);

/// bs_i: as_lambda_i(vec) * as_lambda_i(dual vec) <= (2 pi)^d.
InequalityReport check_bs_i(const LogConcaveFunction& phi1, const LogConcaveFunction& phi2,
                            double lambda, double i, double n_w, const CheckContext& ctx);

// ---- suite ----

struct SuiteConfig {
  int dimension = 2;
  std::vector<std::string> checks;    // empty = every check
  std::vector<std::string> families;  // instance pool; empty = default mix
  QuadratureSpec quad;
  TolerancePolicy tol;
  int trials = 1;
  std::uint64_t seed = 42;
};

const std::vector<std::string>& all_check_names();

/// Runs every requested check on seeded instances, deterministically for a
/// given seed and independent of worker count (reports are merged in task
/// order). IntegralDiverged inside a check surfaces as an inconclusive
/// report rather than an error.
std::vector<InequalityReport> run_suite(const SuiteConfig& config);

/// 0 when everything holds (or is equality), 2 on any violation, 3 when
/// inconclusive results exist but nothing is violated.
int exit_code_for(const std::vector<InequalityReport>& reports);

}  // namespace logdiv
