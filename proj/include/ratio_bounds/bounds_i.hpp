// Closed-form bounds for the ratio I_nu(x) / I_{nu-1}(x).
//
// Families (lambda = nu + (alpha-1)/2, sigma = nu + (alpha+1)/2):
//   b_alpha      = x / (lambda + sqrt(lambda^2 + x^2))
//   B_alpha      = x / (delta + sqrt(delta^2 + x^2)),
//                  delta = (nu - 1/2) + lambda / (2 sqrt(lambda^2 + x^2))
//   Btilde_alpha = x / (delta_m + sqrt(delta_p^2 + x^2)),
//                  delta_pm = (nu +- 1/2) +- sigma / (2 sqrt(sigma^2 + x^2))
//   cf1          = one continued-fraction step applied to b_0 / b_1 at nu + 1
//
// Proven validity (see validity_I): b_0 upper (nu >= 1/2), b_{-1} upper and
// b_1 lower (nu >= 0), B_0 upper (nu >= 1/2), B_2 lower (nu >= 0), Btilde_0
// lower and Btilde_2 upper (nu >= 0), cf1 both sides (nu >= 0), plus the
// alpha-monotone extensions of b and B.
#pragma once

#include "ratio_bounds/bound_types.hpp"

namespace ratio_bounds {

double b_alpha(double nu, double alpha, double x);
double B_alpha(double nu, double alpha, double x);
double Btilde_alpha(double nu, double alpha, double x);

/// Lower x/(nu-1/2+sqrt((nu+1/2)^2+x^2)) and upper x/(nu-1+sqrt((nu+1)^2+x^2)).
/// Throws ValidityError for nu < 0.
Enclosure cf1_bounds(double nu, double x);

Validity validity_I(const BoundSpec& spec, double nu);

/// Evaluates one I-side family member and attaches its validity verdict.
/// Formulas are evaluated even when the spec is not a proven bound.
BoundValue evaluate_I(const BoundSpec& spec, double nu, double x);

/// Best proven enclosure at the given level:
///   0: b-family (b_1 lower; b_0 and/or b_{-1} upper)
///   1: {B_2, Btilde_0} lower, {B_0, Btilde_2} upper
///   2: level 1 intersected with one CF step of level 1 at nu + 1
/// Throws ValidityError for nu < 0, DomainError for a bad level or x <= 0.
Enclosure enclosure_I(double nu, double x, int level);

}  // namespace ratio_bounds
