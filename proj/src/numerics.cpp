#include "domainwall/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "domainwall/errors.hpp"

namespace domainwall::numerics {

std::vector<double> derivative(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 3) throw InvalidArgument("derivative needs at least 3 samples");
  std::vector<double> d(n);
  const double inv2h = 1.0 / (2.0 * h);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) * inv2h;
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
  return d;
}

double simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 3 || n % 2 == 0) {
    throw InvalidArgument("Simpson rule needs an odd number (>= 3) of samples, got " +
                          std::to_string(n));
  }
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) (i % 2 == 1 ? odd : even) += f[i];
  return h / 3.0 * (f[0] + f[n - 1] + 4.0 * odd + 2.0 * even);
}

double cubic_interpolate(std::span<const double> f, double x0, double h, double x) {
  const std::size_t n = f.size();
  if (n < 4) throw InvalidArgument("cubic interpolation needs at least 4 samples");
  const double t = (x - x0) / h;
  const double last = static_cast<double>(n - 1);
  constexpr double kSlack = 1e-9;
  if (t < -kSlack || t > last + kSlack) {
    throw InvalidArgument("interpolation point " + std::to_string(x) + " outside the mesh");
  }
  const double cell = std::floor(std::clamp(t, 0.0, last));
  if (cell == t) return f[static_cast<std::size_t>(cell)];
  // Stencil {k-1, k, k+1, k+2} around the cell, shifted inward at the ends.
  const auto k = static_cast<std::ptrdiff_t>(cell);
  const std::ptrdiff_t first =
      std::clamp<std::ptrdiff_t>(k - 1, 0, static_cast<std::ptrdiff_t>(n) - 4);
  double result = 0.0;
  for (std::ptrdiff_t a = 0; a < 4; ++a) {
    double weight = 1.0;
    const double ta = static_cast<double>(first + a);
    for (std::ptrdiff_t b = 0; b < 4; ++b) {
      if (a == b) continue;
      const double tb = static_cast<double>(first + b);
      weight *= (t - tb) / (ta - tb);
    }
    result += weight * f[static_cast<std::size_t>(first + a)];
  }
  return result;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidArgument("slope fit needs two equally sized samples of length >= 2");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace domainwall::numerics
