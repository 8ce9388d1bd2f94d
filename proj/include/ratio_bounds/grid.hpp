// Sample grids for sweeps and verification.
#pragma once

#include <cstddef>
#include <vector>

namespace ratio_bounds {

/// n points log-spaced over [lo, hi], endpoints included. Requires 0 < lo <= hi.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// n points evenly spaced over [lo, hi], endpoints included.
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

}  // namespace ratio_bounds
