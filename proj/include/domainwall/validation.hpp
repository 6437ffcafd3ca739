#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "domainwall/bvp.hpp"
#include "domainwall/profile.hpp"
#include "domainwall/singular_limit.hpp"

namespace domainwall {

/// Weighted sup-norm distances of a finite-eps profile from the singular limit.
/// phi components are weighted by min{e^{x/lambda}, e^{-x}}, w1 by the square of it.
struct WeightedDeviation {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double w1 = 0.0;
};

struct ValidationReport {
  double hamiltonian_sup = 0.0;
  bool monotone_u = false;
  bool monotone_v = false;
  bool disk_bound = false;
  bool angle_decreasing = false;
  bool phi2_negative = false;
  /// sup |u(x) - v(-x)|; only evaluated for lambda = 1.
  std::optional<double> symmetry_defect;
  double manifold_distance = 0.0;
  WeightedDeviation weighted_deviations;
  double energy = 0.0;
  double sigma_ratio = 0.0;

  /// Conjunction of the five nodewise structure checks.
  bool structure_ok() const noexcept {
    return monotone_u && monotone_v && disk_bound && angle_decreasing && phi2_negative;
  }
};

/// Absolute floor below which a difference of O(1) doubles is not resolvable.
inline constexpr double kRoundoffFloor = 32 * std::numeric_limits<double>::epsilon();
/// Smallest 1 - R for which w1 = (1 - R)/eps^2 carries about five correct digits.
inline constexpr double kResolvableRadialDefect = 1e-11;
/// Distance to a limit under which a component counts as saturated there.
inline constexpr double kSaturationBand = 1e-13;

/// Nodewise strict monotonicity of a quantity running between the limits lo and hi.
/// Where two neighbours sit within kSaturationBand of the same limit, only a
/// reversal larger than kRoundoffFloor counts as a violation. At least one step
/// must exceed kRoundoffFloor, so a flat column fails.
bool strictly_increasing(const std::vector<double>& f, double lo = 0.0, double hi = 1.0);
bool strictly_decreasing(const std::vector<double>& f, double lo = 0.0, double hi = 1.0);

/// u^2 + v^2 < 1 at interior nodes, evaluated as (1-m)(1+m) - (other)^2 with
/// m = max(u, v). Defects down to -kRoundoffFloor are tolerated only in the
/// saturated tails outside the outermost nodes where the defect exceeds
/// kRoundoffFloor; a profile with no such node fails.
bool disk_bound_holds(const CartesianProfile& profile);

/// Evaluates every diagnostic against the default reduced solution for the
/// profile's lambda. Never throws on physically bad profiles; flags them.
ValidationReport validate_profile(const CartesianProfile& profile);
ValidationReport validate_profile(const CartesianProfile& profile, const ReducedSolution& reduced);

/// Deviations on |x| <= min(L_profile, L_reduced) - 2, with w1 further limited
/// to the inner 90% of that window and to nodes where eps^2 w1 on the critical
/// manifold is at least kResolvableRadialDefect (below that, w1 = (1-R)/eps^2
/// is rounding noise). The reduced solution is interpolated cubically onto the
/// profile nodes.
WeightedDeviation weighted_deviation(const CartesianProfile& profile, const ReducedSolution& reduced);

/// E = integral of [lambda^2 eps u'^2/2 + eps v'^2/2 + (1-u^2-v^2)^2/(4 eps) + eps u^2 v^2/2] dx
/// by composite Simpson with finite-difference derivatives.
double energy_of_profile(const CartesianProfile& profile);

struct RateStudy {
  double lambda = 1.0;
  std::vector<double> eps_list;
  std::vector<WeightedDeviation> deviations;
  std::vector<double> sigma_ratio;
  double sigma_limit = 0.0;
  /// |sigma_ratio - sigma_limit| per eps.
  std::vector<double> sigma_deviation;
  /// Least-squares slopes of log D against log eps.
  WeightedDeviation slopes;
  double sigma_slope = 0.0;
  /// D(eps_{k+1}) / D(eps_k) for consecutive entries.
  std::vector<WeightedDeviation> halving_ratios;
  std::vector<double> sigma_halving_ratios;
  std::vector<CartesianProfile> profiles;
  std::vector<ValidationReport> reports;
};

/// Solves at every eps (up to `workers` at a time), validates, and fits rates.
/// Solver failures are rethrown as NoConvergence annotated with the failing eps.
RateStudy rate_study(double lambda, const std::vector<double>& eps_list, const SolverConfig& config,
                     std::size_t workers = 1);

}  // namespace domainwall
