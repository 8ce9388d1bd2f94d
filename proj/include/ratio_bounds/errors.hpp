// Exception types raised by the ratio_bounds library.
#pragma once

#include <stdexcept>
#include <string>

namespace ratio_bounds {

/// Base class; catch this to handle any library failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (x <= 0, bad level, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The characteristic-root bound does not apply (A*C >= 0).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Finite-difference derivative failed its two-step consistency check.
class DerivativeError : public Error {
 public:
  using Error::Error;
};

/// Non-finite value produced while evaluating at a sample point.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double x) : Error(what), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

/// Request outside the proven validity range of a bound family.
class ValidityError : public Error {
 public:
  using Error::Error;
};

/// Iterative evaluation did not reach its tolerance within the allowed depth.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Quadrature refinements disagree beyond the requested tolerance.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

}  // namespace ratio_bounds
