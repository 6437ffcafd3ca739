#pragma once

#include <span>
#include <vector>

namespace domainwall::numerics {

/// First derivative on a uniform mesh: 2nd-order central differences in the
/// interior, 2nd-order one-sided three-point stencils at both ends.
std::vector<double> derivative(std::span<const double> f, double h);

/// Composite Simpson rule on a uniform mesh; f.size() must be odd and >= 3.
double simpson(std::span<const double> f, double h);

/// 4-point Lagrange interpolation of samples f on the uniform mesh x0 + i h.
/// Points outside [x0, x0 + (n-1) h] are rejected.
double cubic_interpolate(std::span<const double> f, double x0, double h, double x);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace domainwall::numerics
