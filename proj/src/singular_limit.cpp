#include "domainwall/singular_limit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "domainwall/numerics.hpp"

namespace domainwall {

namespace {

double anisotropy(double phi1, double lambda) {
  const double c = std::cos(phi1);
  return 1.0 + (1.0 / (lambda * lambda) - 1.0) * c * c;
}

double rk4_step(double phi, double h, double lambda) {
  const double k1 = reduced_rhs(phi, lambda);
  const double k2 = reduced_rhs(phi + 0.5 * h * k1, lambda);
  const double k3 = reduced_rhs(phi + 0.5 * h * k2, lambda);
  const double k4 = reduced_rhs(phi + h * k3, lambda);
  return phi + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double checked_step(double phi, double h, double lambda, double x) {
  const double full = rk4_step(phi, h, lambda);
  const double half = rk4_step(rk4_step(phi, 0.5 * h, lambda), 0.5 * h, lambda);
  const double estimate = std::abs(half - full) / 15.0;
  if (estimate > kReducedStepTolerance) {
    char message[128];
    std::snprintf(message, sizeof message, "reduced step error estimate %.3e exceeds %.1e near x = %g",
                  estimate, kReducedStepTolerance, x);
    throw MeshTooCoarse(message);
  }
  return half;
}

}  // namespace

ManifoldPoint critical_manifold_point(double phi1, double phi2, double lambda) {
  const double inv_lam2 = 1.0 / (lambda * lambda);
  const double s = std::sin(phi1);
  const double c = std::cos(phi1);
  const double numerator = phi2 * phi2 + (inv_lam2 + 1.0) * s * s * c * c;
  return {numerator / (2.0 * anisotropy(phi1, lambda)), 0.0};
}

double reduced_rhs(double phi1, double lambda) {
  return -std::sin(2.0 * phi1) / (2.0 * lambda * std::sqrt(anisotropy(phi1, lambda)));
}

double default_reduced_half_length(double lambda) { return 12.0 * std::max(1.0, lambda); }

ReducedSolution solve_reduced(double lambda, double half_length, std::size_t n) {
  if (!(lambda >= 1.0)) throw InvalidArgument("lambda must be >= 1");
  ReducedSolution out{Mesh::uniform(half_length, n), std::vector<double>(n),
                      std::vector<double>(n), lambda};
  const std::size_t mid = (n - 1) / 2;
  const double h = out.mesh.spacing();
  out.phi1[mid] = std::numbers::pi / 4;
  for (std::size_t i = mid; i + 1 < n; ++i) {
    out.phi1[i + 1] = checked_step(out.phi1[i], h, lambda, out.mesh[i]);
  }
  for (std::size_t i = mid; i > 0; --i) {
    out.phi1[i - 1] = checked_step(out.phi1[i], -h, lambda, out.mesh[i]);
  }
  for (std::size_t i = 0; i < n; ++i) out.phi2[i] = reduced_rhs(out.phi1[i], lambda);
  return out;
}

ReducedSolution solve_reduced(double lambda) {
  return solve_reduced(lambda, default_reduced_half_length(lambda), kDefaultReducedNodes);
}

SlowFastProfile singular_lift(const ReducedSolution& reduced) {
  const std::size_t n = reduced.mesh.size();
  SlowFastProfile out{reduced.mesh, reduced.lambda, 0.0, std::vector<double>(n),
                      std::vector<double>(n, 0.0), reduced.phi1, reduced.phi2};
  for (std::size_t i = 0; i < n; ++i) {
    out.w1[i] = critical_manifold_point(reduced.phi1[i], reduced.phi2[i], reduced.lambda).w1;
  }
  return out;
}

CartesianProfile composite_guess(const ReducedSolution& reduced, const ModelParams& params) {
  if (params.lambda() != reduced.lambda) {
    throw InvalidArgument("composite guess: lambda of params and reduced solution differ");
  }
  auto profile = slowfast_to_cartesian(singular_lift(reduced), params);
  profile.u.front() = profile.bc.left_u;
  profile.v.front() = profile.bc.left_v;
  profile.u.back() = profile.bc.right_u;
  profile.v.back() = profile.bc.right_v;
  return profile;
}

double reduced_energy_integral(double lambda) {
  if (!(lambda >= 1.0)) throw InvalidArgument("lambda must be >= 1");
  // (1 - l^3)/(1 - l^2) with the common factor (1 - l) cancelled.
  return 4.0 * (1.0 + lambda + lambda * lambda) / (3.0 * (1.0 + lambda));
}

double reduced_energy_quadrature(const ReducedSolution& reduced) {
  std::vector<double> integrand(reduced.phi1.size());
  std::transform(reduced.phi1.begin(), reduced.phi1.end(), integrand.begin(), [](double phi) {
    const double s = std::sin(2.0 * phi);
    return s * s;
  });
  return numerics::simpson(integrand, reduced.mesh.spacing());
}

double sigma_ratio_limit(double lambda) { return reduced_energy_integral(lambda) / 4.0; }

}  // namespace domainwall
