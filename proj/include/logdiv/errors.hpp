#pragma once

#include <stdexcept>
#include <string>

namespace logdiv {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A Hessian that should be positive definite failed its Cholesky factorization.
class NonConvexPotential : public Error {
 public:
  using Error::Error;
};

class NotSelfAdjoint : public Error {
 public:
  using Error::Error;
};

class NotUnimodular : public Error {
 public:
  using Error::Error;
};

class NotSPD : public Error {
 public:
  using Error::Error;
};

class SingularHessian : public Error {
 public:
  using Error::Error;
};

/// Generator evaluated outside [0, +inf].
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A factor that must be nonnegative under a fractional exponent was negative.
class NegativeFactor : public Error {
 public:
  using Error::Error;
};

/// Nonfinite integrand value, or the error target was missed at the node cap.
class IntegralDiverged : public Error {
 public:
  using Error::Error;
};

class OptimizationFailed : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// A check was handed an instance that fails one of its preconditions.
class GateViolation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace logdiv
