#pragma once

#include <optional>
#include <string>
#include <vector>

namespace logdiv {

enum class GeneratorKind {
  Power,        // t^lambda
  Log,          // log t
  LogPlus,      // [log t]_+
  TLog,         // -t log t (adjoint of Log)
  TLogPlus,     // [-t log t]_+ (adjoint of LogPlus)
  AbsMinusOne,  // |t - 1| (total variation)
};

enum class Curvature { Convex, Concave };

/// A divergence generator f: (0, inf) -> extended reals, evaluated with
/// explicit limit conventions at t = 0 and t = +inf:
///   power:  0^l = 0 for l > 0, 0^0 = 1, 0^l = +inf for l < 0
///   log:    log 0 = -inf
///   |t-1|:  value at +inf is +inf
/// The clamped kinds ([.]_+) send the negative branch to 0.
class Generator {
 public:
  static Generator power(double lambda);
  static Generator log();
  static Generator log_plus();
  static Generator total_variation();

  GeneratorKind kind() const { return kind_; }
  /// Exponent of the power kind; meaningless otherwise.
  double exponent() const { return lambda_; }
  Curvature curvature() const { return curvature_; }
  /// Homogeneity degree: lambda for power, absent for the other kinds.
  std::optional<double> homogeneity() const;

  /// f(t). Throws DomainError for t < 0 or NaN.
  double operator()(double t) const;

  /// f(t) given log t (+-inf allowed). Stable for extreme arguments.
  double eval_given_log(double log_t) const;

  /// log f(t) given log t. Returns -inf when f(t) == 0, +inf when
  /// f(t) == +inf, and NaN when f(t) < 0 (an inadmissible factor).
  /// For the power kind this is exact even where f itself overflows.
  double log_eval_given_log(double log_t) const;

  /// The *-adjoint f*(t) = t f(1/t). Closed on the catalog; involutive.
  Generator adjoint() const;

  std::string name() const;

 private:
  Generator(GeneratorKind kind, double lambda, Curvature curvature)
      : kind_(kind), lambda_(lambda), curvature_(curvature) {}

  GeneratorKind kind_;
  double lambda_ = 0.0;
  Curvature curvature_;
};

using GeneratorVector = std::vector<Generator>;

}  // namespace logdiv
