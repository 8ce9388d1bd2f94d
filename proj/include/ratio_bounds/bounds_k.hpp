// Closed-form bounds for the ratio K_{nu-1}(x) / K_nu(x).
//
//   d_alpha = x / (tau + sqrt(tau^2 + x^2)),            tau = nu - (alpha+1)/2
//   D_alpha = x / (phi + sqrt(phi^2 + x^2)),
//             phi = (nu - 1/2) - tau / (2 sqrt(tau^2 + x^2))
//
// d is increasing and D decreasing in alpha. Proven: d_1 upper and d_{-1}
// lower for every real nu; d_0 lower for nu >= 1/2; D_0 upper and
// D_{2nu-1} = d_0 lower for nu >= 1/2, with equality at nu = 1/2.
#pragma once

#include "ratio_bounds/bound_types.hpp"

namespace ratio_bounds {

double d_alpha(double nu, double alpha, double x);
double D_alpha(double nu, double alpha, double x);

Validity validity_K(const BoundSpec& spec, double nu);

BoundValue evaluate_K(const BoundSpec& spec, double nu, double x);

/// Turns an upper bound for K_{-nu}(x)/K_{1-nu}(x) into a lower bound for
/// K_{nu-1}(x)/K_nu(x) using K_mu = K_{-mu}: the result is its reciprocal.
double reflect_K(double nu, double x, double upper_of_reflected);

/// Level 0: d_0 (nu >= 1/2) or d_{-1} lower, d_1 upper.
/// Level 1: d_0 = D_{2nu-1} lower and D_0 upper for nu >= 1/2; level 0 below.
Enclosure enclosure_K(double nu, double x, int level);

}  // namespace ratio_bounds
