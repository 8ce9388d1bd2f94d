// Continued-fraction machinery for I_nu(x)/I_{nu-1}(x).
//
// The three-term recurrence gives r_nu = 1 / (2 nu / x + r_{nu+1}). The map
// t -> 1/(2nu/x + t) is antitone, so bounds at order nu+1 turn into bounds
// of the opposite side at order nu. Iterating it yields bound sequences, the
// classical approximants H^(i) (zero tail) and tail-bracketed evaluation of
// the ratio.
#pragma once

#include <cstddef>
#include <vector>

#include "ratio_bounds/bound_types.hpp"

namespace ratio_bounds::cf {

/// 1 / (2 nu / x + t). Throws DomainError if the denominator is not positive.
double cf_map_I(double nu, double x, double t);

/// K-side map 1 / (2 (nu-1) / x + t) from K_{nu-1}/K_nu = 1/(2(nu-1)/x + K_{nu-2}/K_{nu-1}).
/// Provided for experimentation only: bounds pushed through it are not certified.
double cf_map_K(double nu, double x, double t);

/// Bound sequence l^(i), u^(i) started from the seed-level enclosure at
/// order nu + depth and mapped down to nu. Seed 0 is the b-family pair,
/// seed 1 the level-1 enclosure. Requires nu >= 0.
Enclosure iterate_enclosure_I(double nu, double x, std::size_t depth, int seed_level);

/// Approximant H^(i)_nu(x) with H^(0) = 0. Odd i give upper bounds, even i
/// lower bounds. Throws DomainError on a zero denominator.
double cf_approximant(double nu, double x, std::size_t i);

/// Tail estimate used when truncating the fraction.
enum class TailPolicy {
  zero,     // [0, x/(2 mu)]: brackets of consecutive approximants
  b_level,  // b-family enclosure at the truncation order
  B_level,  // level-1 enclosure (B and Btilde) at the truncation order
};
const char* to_string(TailPolicy p);

struct CfStep {
  std::size_t depth = 0;
  double lower = 0.0;
  double upper = 0.0;
};

struct CfRun {
  double value = 0.0;  // bracket midpoint
  std::size_t iterations = 0;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<CfStep> history;  // brackets for depth 1..iterations when requested
};

struct CfOptions {
  std::size_t max_depth = 10000;
  bool record_history = false;
};

/// Bracket for the ratio from truncating at depth `depth` with the policy's
/// tail bracket, intersected with the policy bracket at every order on the
/// way down (so brackets are nested in depth).
CfStep bracket_at_depth(double nu, double x, std::size_t depth, TailPolicy policy);

/// Smallest depth whose bracket has relative width <= tol. Throws
/// ConvergenceError if max_depth is not enough, DomainError for nu < 0,
/// x <= 0 or tol <= 0.
CfRun evaluate_ratio_I(double nu, double x, double tol, TailPolicy policy, const CfOptions& options = {});

// Sharpness of bound sequences, measured as c = u / l - 1.

enum class GapKind {
  b_level,  // sequences started from (b_1, b_0) (b_{-1} upper when nu < 1/2)
  B_level,  // sequences started from (B_2, B_0)
};
enum class Limit { x_to_zero, nu_to_infinity, x_to_infinity };

const char* to_string(GapKind k);
const char* to_string(Limit l);

/// Measured u^(i)/l^(i) - 1 of the pure sequences seeded by `kind`.
double measured_gap(GapKind kind, double nu, double x, std::size_t i);

/// Leading-order gap predicted in the selected limit:
///   b-level: 1/(2nu-1) (x->0), 1/(2nu) (nu->inf), 1/(2x) (x->inf);
///            for i >= 1 and x->0 or nu->inf: (1/(2nu)) (x/2nu)^(2i)
///   B-level: 8x^2/(4nu^2-1)^2 (x->0), x^2/(2nu^4) (nu->inf), 1/(2x^2) (x->inf);
///            for i >= 1 and x->0 or nu->inf: (2/nu^2) (x/2nu)^(2i+2)
/// Throws DomainError when the formula is undefined (x->0 needs nu > 1/2).
double sharpness_model(GapKind kind, Limit limit, double nu, double x, std::size_t i);

}  // namespace ratio_bounds::cf
