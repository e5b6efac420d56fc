#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace logdiv {

/// Value, gradient and Hessian of a potential at one point.
struct PotentialJet {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

/// Parameters (c, A) of c * exp(-<Ax,x>/2) with c > 0 and A symmetric
/// positive definite. Construction validates symmetry (componentwise
/// 1e-12) and positive Cholesky pivots.
struct GaussianParams {
  double scale;
  Eigen::MatrixXd matrix;

  GaussianParams(double c, Eigen::MatrixXd a);
  int dimension() const { return static_cast<int>(matrix.rows()); }
  /// (1/c, A^{-1}); the closed-form dual pair.
  GaussianParams dual() const;
};

enum class Family { Gaussian, Cosh, Quartic, Scaled, ComposedLinear, Custom };

std::string family_name(Family f);

/// A log-concave function c * e^{-psi} represented by its potential.
/// psi is normalized so its minimum is >= 0; the multiplicative constant
/// is carried separately as log c. Evaluators are pure; values may be
/// shared across threads freely.
class LogConcaveFunction {
 public:
  using JetFn = std::function<PotentialJet(const Eigen::VectorXd&)>;

  static LogConcaveFunction gaussian(const GaussianParams& params);
  static LogConcaveFunction gaussian(double c, Eigen::MatrixXd a);
  static LogConcaveFunction standard_gaussian(int d);
  /// psi(x) = sum_j cosh(x_j) - d. Even, strictly convex, analytic conjugate.
  static LogConcaveFunction cosh_family(int d);
  /// psi(x) = |x|^2/2 + |x|^4/4. Hess psi >= I everywhere; no closed conjugate.
  static LogConcaveFunction quartic(int d);
  /// User potential with analytic gradient/Hessian callbacks. Finite
  /// differences are only a validator, never a fallback.
  static LogConcaveFunction custom(int d, JetFn jet, double log_scale = 0.0,
                                   std::string label = "custom");

  int dimension() const;
  double log_scale() const;
  Family family() const;
  bool has_closed_form_dual() const;
  /// Non-null only for the gaussian family.
  const GaussianParams* gaussian_params() const;
  std::string describe() const;

  /// Normalized potential psi (scale excluded).
  double potential(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;
  PotentialJet jet(const Eigen::VectorXd& x) const;

  /// log(c e^{-psi(x)}) = log c - psi(x).
  double log_value(const Eigen::VectorXd& x) const;
  double value(const Eigen::VectorXd& x) const;

  /// The function multiplied by factor > 0 (family tag Scaled).
  LogConcaveFunction scaled(double factor) const;

 private:
  struct Impl;
  explicit LogConcaveFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static LogConcaveFunction make(int d, JetFn jet, double log_scale, Family family,
                                 std::string label);
  friend LogConcaveFunction apply_selfadjoint(const LogConcaveFunction& f,
                                              const Eigen::MatrixXd& t);
  std::shared_ptr<const Impl> impl_;
};

/// Ordered list of log-concave functions sharing one dimension.
using FunctionVector = std::vector<LogConcaveFunction>;

/// Throws DimensionMismatch unless the vector is nonempty with equal dims.
void validate_function_vector(const FunctionVector& functions);

/// (psi(x), grad psi(x), Hess psi(x)) with a positive-definiteness check on
/// the Hessian (Cholesky) — failure signals an invalid custom family.
PotentialJet potential_jet(const LogConcaveFunction& f, const Eigen::VectorXd& x);

/// The density pair: q = c e^{-psi}, p = e^{psi - log c - <x, grad psi>} det Hess psi.
struct DensityPair {
  double p = 0.0;
  double q = 0.0;
};
DensityPair density_pair(const LogConcaveFunction& f, const Eigen::VectorXd& x);

/// log q and log(p/q) plus the jet, for log-domain integrands.
/// log(p/q) = 2(psi - log c) - <x, grad psi> + log det Hess psi;
/// a Hessian with nonpositive determinant reports log_ratio = -inf.
struct LogDensityData {
  double log_q;
  double log_ratio;
  PotentialJet jet;
};
LogDensityData log_density_data(const LogConcaveFunction& f, const Eigen::VectorXd& x);

/// phi o T for a symmetric T with |det T| = 1 (tolerance 1e-10).
LogConcaveFunction apply_selfadjoint(const LogConcaveFunction& f, const Eigen::MatrixXd& t);

}  // namespace logdiv
