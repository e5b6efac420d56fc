#include "logdiv/generator.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "logdiv/errors.hpp"

namespace logdiv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

Generator Generator::power(double lambda) {
  const Curvature c =
      (lambda >= 0.0 && lambda <= 1.0) ? Curvature::Concave : Curvature::Convex;
  return Generator(GeneratorKind::Power, lambda, c);
}

Generator Generator::log() { return Generator(GeneratorKind::Log, 0.0, Curvature::Concave); }

Generator Generator::log_plus() {
  return Generator(GeneratorKind::LogPlus, 0.0, Curvature::Concave);
}

Generator Generator::total_variation() {
  return Generator(GeneratorKind::AbsMinusOne, 0.0, Curvature::Convex);
}

std::optional<double> Generator::homogeneity() const {
  if (kind_ == GeneratorKind::Power) return lambda_;
  return std::nullopt;
}

double Generator::operator()(double t) const {
  if (std::isnan(t) || t < 0.0) throw DomainError("generator argument must be in [0, +inf]");
  return eval_given_log(std::log(t));
}

double Generator::eval_given_log(double log_t) const {
  switch (kind_) {
    case GeneratorKind::Power:
      if (lambda_ == 0.0) return 1.0;
      return std::exp(lambda_ * log_t);
    case GeneratorKind::Log:
      return log_t;
    case GeneratorKind::LogPlus:
      return log_t > 0.0 ? log_t : 0.0;
    case GeneratorKind::TLog:
      if (log_t == -kInf) return 0.0;
      return -std::exp(log_t) * log_t;
    case GeneratorKind::TLogPlus: {
      if (log_t >= 0.0) return 0.0;  // covers log_t = +inf as well
      return -std::exp(log_t) * log_t;
    }
    case GeneratorKind::AbsMinusOne:
      return std::abs(std::expm1(log_t));
  }
  return kNaN;
}

double Generator::log_eval_given_log(double log_t) const {
  switch (kind_) {
    case GeneratorKind::Power:
      if (lambda_ == 0.0) return 0.0;
      if (std::isinf(log_t)) return lambda_ > 0.0 ? log_t : -log_t;
      return lambda_ * log_t;
    case GeneratorKind::Log:
      if (log_t > 0.0) return std::log(log_t);
      return log_t == 0.0 ? -kInf : kNaN;
    case GeneratorKind::LogPlus:
      return log_t > 0.0 ? std::log(log_t) : -kInf;
    case GeneratorKind::TLog:
      if (log_t < 0.0) return log_t + std::log(-log_t);
      return log_t == 0.0 ? -kInf : kNaN;
    case GeneratorKind::TLogPlus:
      return log_t < 0.0 ? log_t + std::log(-log_t) : -kInf;
    case GeneratorKind::AbsMinusOne: {
      const double v = std::abs(std::expm1(log_t));
      return v > 0.0 ? std::log(v) : -kInf;
    }
  }
  return kNaN;
}

Generator Generator::adjoint() const {
  switch (kind_) {
    case GeneratorKind::Power:
      return power(1.0 - lambda_);
    case GeneratorKind::Log:
      return Generator(GeneratorKind::TLog, 0.0, Curvature::Concave);
    case GeneratorKind::TLog:
      return log();
    case GeneratorKind::LogPlus:
      return Generator(GeneratorKind::TLogPlus, 0.0, Curvature::Concave);
    case GeneratorKind::TLogPlus:
      return log_plus();
    case GeneratorKind::AbsMinusOne:
      return total_variation();
  }
  return *this;
}

std::string Generator::name() const {
  switch (kind_) {
    case GeneratorKind::Power:
      return "power(" + std::to_string(lambda_) + ")";
    case GeneratorKind::Log:
      return "log";
    case GeneratorKind::LogPlus:
      return "log+";
    case GeneratorKind::TLog:
      return "tlog";
    case GeneratorKind::TLogPlus:
      return "tlog+";
    case GeneratorKind::AbsMinusOne:
      return "tv";
  }
  return "?";
}

}  // namespace logdiv
