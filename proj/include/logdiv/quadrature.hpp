#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "logdiv/function.hpp"

namespace logdiv {

enum class Scheme { GaussHermite, MonteCarlo };

std::string scheme_name(Scheme s);

/// How to integrate: tensor Gauss-Hermite for d <= 4 (order^d capped at
/// 1e7 nodes), importance-sampled Monte Carlo otherwise (>= 1e4 samples).
struct QuadratureSpec {
  Scheme scheme = Scheme::GaussHermite;
  int order = 40;
  long samples = 2'000'000;
  std::uint64_t seed = 0;
  double target_rel_error = 1e-6;

  /// GH order 40 for d <= 2, 24 for d = 3, 20 for d = 4; MC beyond.
  static QuadratureSpec defaults_for_dimension(int d);
  void validate(int d) const;
};

struct IntegrationResult {
  double value = 0.0;
  double error = 0.0;  // GH: |value(order) - value(order/2)|; MC: 3 * std. error
  long evaluations = 0;
  Scheme scheme = Scheme::GaussHermite;
};

/// Gaussian reference frame (mode, covariance) for placing nodes.
struct LaplaceFrame {
  Eigen::VectorXd mode;
  Eigen::MatrixXd covariance;
  Eigen::MatrixXd chol;  // lower-triangular L with L L^T = covariance

  static LaplaceFrame standard(int d);
  static LaplaceFrame from(Eigen::VectorXd mode, Eigen::MatrixXd covariance);
  int dimension() const { return static_cast<int>(mode.size()); }
};

/// Newton minimization of the given strictly convex potential; the frame is
/// (argmin, inverse Hessian at the argmin). Gradient tolerance 1e-10.
LaplaceFrame laplace_fit(int dim, const std::function<PotentialJet(const Eigen::VectorXd&)>& jet,
                         const Eigen::VectorXd* start = nullptr);

/// 1-D Gauss-Hermite rule for weight e^{-u^2} (Golub-Welsch). Cached.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussHermiteRule& gauss_hermite_rule(int order);

/// Integral of g over R^d. GH maps tensor nodes by x = m + sqrt(2) L u and
/// divides out the frame weight, so polynomial * frame-Gaussian integrands
/// of per-axis degree <= 2*order-1 are exact. MC importance-samples from
/// N(m, Sigma), deterministic per seed. Node sums are pairwise, in a fixed
/// order, so results do not depend on thread count.
/// Escalates order/samples until the relative error target is met; throws
/// IntegralDiverged on a nonfinite integrand value or if the target is still
/// missed at the cap.
IntegrationResult integrate(const std::function<double(const Eigen::VectorXd&)>& g,
                            const LaplaceFrame& frame, const QuadratureSpec& spec);

struct MaximizeResult {
  Eigen::VectorXd argmax;
  double value = 0.0;
};

/// Coarse grid over mode +- 5 sigma (9 points per axis for d <= 3), then
/// Nelder-Mead refinement until the simplex diameter is <= 1e-8.
MaximizeResult maximize(const std::function<double(const Eigen::VectorXd&)>& g,
                        const LaplaceFrame& frame, const QuadratureSpec& spec);

/// Barycenter int x phi dx / int phi dx with the largest componentwise
/// quadrature error reported.
struct BarycenterResult {
  Eigen::VectorXd value;
  double error = 0.0;
};
BarycenterResult barycenter(const LogConcaveFunction& f, const QuadratureSpec& spec);

}  // namespace logdiv
