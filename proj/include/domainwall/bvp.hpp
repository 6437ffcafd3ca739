#pragma once

#include <cstddef>
#include <vector>

#include "domainwall/errors.hpp"
#include "domainwall/model.hpp"
#include "domainwall/profile.hpp"

namespace domainwall {

/// Newton/continuation settings for the truncated heteroclinic problem.
struct SolverConfig {
  double half_length = 24.0;
  std::size_t n = 2401;
  double newton_tol = 1e-10;
  int max_iter = 25;
  double damping = 0.5;
  /// Natural-continuation ladder in eps, walked from large to small.
  std::vector<double> continuation_steps{0.4, 0.3, 0.2, 0.15, 0.1, 0.07, 0.05};

  /// L = 24 max(1, lambda) with the remaining fields at their defaults.
  static SolverConfig defaults(double lambda);
  /// Throws InvalidArgument if any field is out of range.
  void validate() const;
};

/// Largest eps accepted by solve_heteroclinic.
inline constexpr double kMaxEps = 0.5;

/// Linear elimination broke down; carries the iterate at which it happened.
class SingularJacobian : public Error {
 public:
  SingularJacobian(const std::string& what, CartesianProfile last)
      : Error(what), last_(std::move(last)) {}
  const CartesianProfile& last_iterate() const noexcept { return last_; }

 private:
  CartesianProfile last_;
};

/// Newton or the continuation ladder failed; `eps` is where it stalled.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, CartesianProfile last, double eps)
      : Error(what), last_(std::move(last)), eps_(eps) {}
  const CartesianProfile& last_iterate() const noexcept { return last_; }
  double eps() const noexcept { return eps_; }

 private:
  CartesianProfile last_;
  double eps_;
};

/// Discrete residual in interleaved order (u0, v0, u1, v1, ...). Interior rows are
///   lambda^2 eps^2 D2 u - (u^3 - u + v^2 u + eps^2 v^2 u),
///   eps^2 D2 v - (v^3 - v + u^2 v + eps^2 u^2 v);
/// the first and last node pairs hold the Dirichlet mismatch.
std::vector<double> assemble_residual(const CartesianProfile& profile);

double residual_norm(const CartesianProfile& profile);

struct NewtonTrace {
  CartesianProfile profile;
  /// Residual sup-norm of the initial guess and of every accepted iterate.
  std::vector<double> residual_history;
  int iterations = 0;
};

/// Damped Newton on the banded collocation system. Accepted steps never raise
/// the residual sup-norm; a rejected trial step is scaled by config.damping.
NewtonTrace newton_solve_traced(CartesianProfile guess, const SolverConfig& config);
CartesianProfile newton_solve(CartesianProfile guess, const SolverConfig& config);

struct LadderStep {
  double eps = 0.0;
  bool converged = false;
  int iterations = 0;

  friend bool operator==(const LadderStep&, const LadderStep&) = default;
};

struct HeteroclinicSolve {
  CartesianProfile profile;
  /// Every Newton attempt in order, including the direct attempt at the target.
  std::vector<LadderStep> ladder;
};

/// solve_reduced -> composite_guess -> newton_solve at the target eps, falling
/// back to the continuation ladder on failure. The result is recentered.
HeteroclinicSolve solve_heteroclinic_traced(const ModelParams& params, const SolverConfig& config);
CartesianProfile solve_heteroclinic(const ModelParams& params, const SolverConfig& config);
CartesianProfile solve_heteroclinic(const ModelParams& params);

/// Location of the single sign change of u - v, from a linear bracket refined
/// on the cubic interpolant. Throws MultipleCrossings or InvalidArgument (none).
double locate_center(const CartesianProfile& profile);

/// Translates the profile so that u = v at x = 0 (cubic interpolation), re-pins
/// the Dirichlet ends, and accumulates the removed translate into `center`.
CartesianProfile recenter(const CartesianProfile& profile);

}  // namespace domainwall
