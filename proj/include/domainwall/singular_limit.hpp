#pragma once

#include <cstddef>
#include <vector>

#include "domainwall/model.hpp"
#include "domainwall/profile.hpp"

namespace domainwall {

/// Point (w1, w2) of the eps = 0 critical manifold above (phi1, phi2).
struct ManifoldPoint {
  double w1 = 0.0;
  double w2 = 0.0;
};

/// w1 = [phi2^2 + (1/lambda^2 + 1) sin^2 cos^2] / (2 [1 + (1/lambda^2 - 1) cos^2]), w2 = 0.
ManifoldPoint critical_manifold_point(double phi1, double phi2, double lambda);

/// Right side of the first-order reduced problem,
/// phi1' = -(1/(2 lambda)) sin(2 phi1) [1 + (1/lambda^2 - 1) cos^2 phi1]^{-1/2}.
double reduced_rhs(double phi1, double lambda);

/// Singular-limit angle phi1,0 pinned by phi1,0(0) = pi/4, and its derivative.
struct ReducedSolution {
  Mesh mesh;
  std::vector<double> phi1;
  std::vector<double> phi2;
  double lambda = 1.0;
};

/// Default reduced mesh: L = 12 max(1, lambda), 4801 nodes.
double default_reduced_half_length(double lambda);
inline constexpr std::size_t kDefaultReducedNodes = 4801;

/// Per-step local error budget of the reduced integrator.
inline constexpr double kReducedStepTolerance = 1e-9;

/// Integrates the reduced problem outward from x = 0 in both directions with
/// classical RK4 (two half steps per mesh interval, compared against one full
/// step for the local error estimate). Throws MeshTooCoarse when an estimate
/// exceeds kReducedStepTolerance.
ReducedSolution solve_reduced(double lambda, double half_length, std::size_t n);
ReducedSolution solve_reduced(double lambda);

/// Lift of (phi1,0, phi2,0) onto the critical manifold; the result has eps = 0.
SlowFastProfile singular_lift(const ReducedSolution& reduced);

/// Leading-order Cartesian profile on the reduced mesh:
/// u = (1 - eps^2 w1) cos(phi1,0), v = (1 - eps^2 w1) sin(phi1,0) with exact
/// Dirichlet values at both ends.
CartesianProfile composite_guess(const ReducedSolution& reduced, const ModelParams& params);

/// Closed form of the integral of sin^2(2 phi1,0) over the line,
/// (4/3)(1 + lambda + lambda^2)/(1 + lambda).
double reduced_energy_integral(double lambda);

/// Composite Simpson value of the same integral over the reduced mesh.
double reduced_energy_quadrature(const ReducedSolution& reduced);

/// Limit of E/eps as eps -> 0: (1/3)(1 + lambda + lambda^2)/(1 + lambda).
double sigma_ratio_limit(double lambda);

}  // namespace domainwall
