// High-precision reference values for the two Bessel ratios.
//
// The I ratio comes from backward evaluation of the continued fraction
// r_nu = 1/(2nu/x + r_{nu+1}); the K ratio from trapezoidal quadrature of
// K_mu(x) = int_0^inf exp(-x cosh t) cosh(mu t) dt. Both self-validate and
// run in MPFR arithmetic at a configurable number of decimal digits.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ratio_bounds/bigfloat.hpp"

namespace ratio_bounds::oracle {

struct PrecisionConfig {
  unsigned digits = 50;
  /// Relative agreement required by the self-checks; 0 selects 10^(5-digits).
  double cf_tol = 0.0;
  /// Initial trapezoid step; 0 selects min(1/4, 1/(2 sqrt(x))).
  double quad_step = 0.0;
  /// Quadrature truncation point; 0 solves x (cosh T - 1) - m T = digits ln 10 + 25.
  double quad_cutoff = 0.0;
  /// Maximum continued-fraction depth.
  std::size_t max_terms = 1000000;
  /// Maximum number of trapezoid step halvings.
  unsigned max_halvings = 20;

  static PrecisionConfig with_digits(unsigned digits);
  /// Defaults, with digits taken from RATIO_BOUNDS_DIGITS when set.
  static PrecisionConfig from_env();

  double tolerance() const;
  /// Throws DomainError if digits < 20 or tolerances are not positive.
  void validate() const;
};

struct OracleValue {
  BigFloat value;
  /// Relative disagreement of the final self-check (CF depth or step halving).
  double self_check = 0.0;
  /// CF depth (I) or number of quadrature nodes (K) used for the result.
  std::size_t work = 0;

  double to_double() const { return value.to_double(); }
};

/// I_nu(x)/I_{nu-1}(x) for nu >= 0, x > 0. Throws DomainError or ConvergenceError.
OracleValue oracle_ratio_I(double nu, double x, const PrecisionConfig& cfg = {});

/// K_{nu-1}(x)/K_nu(x) for |nu| <= 50, x > 0. Throws DomainError or AccuracyError.
OracleValue oracle_ratio_K(double nu, double x, const PrecisionConfig& cfg = {});

/// Quadrature cutoff used for the K oracle.
double quadrature_cutoff(double nu, double x, unsigned digits);

using RealFn = std::function<double(double)>;

struct CrossingBracket {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double diff_lo = 0.0;  // f - g at x_lo
  double diff_hi = 0.0;  // f - g at x_hi
};

/// Sign changes of f - g between consecutive points of an n-point log grid
/// over [x_lo, x_hi]. An empty result is not a proof that none exist.
std::vector<CrossingBracket> crossing_search(const RealFn& f, const RealFn& g, double x_lo, double x_hi,
                                             std::size_t n);

}  // namespace ratio_bounds::oracle
