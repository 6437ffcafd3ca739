#include "domainwall/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include <lapacke.h>

#include "domainwall/numerics.hpp"
#include "domainwall/singular_limit.hpp"

namespace domainwall {

namespace {

// Interleaved ordering (u0, v0, u1, v1, ...) gives two sub- and two super-diagonals.
constexpr lapack_int kLower = 2;
constexpr lapack_int kUpper = 2;
// dgbsv needs kLower extra rows for fill-in from partial pivoting.
constexpr lapack_int kLeadingDim = 2 * kLower + kUpper + 1;

class BandedJacobian {
 public:
  explicit BandedJacobian(std::size_t unknowns)
      : size_(static_cast<lapack_int>(unknowns)),
        storage_(static_cast<std::size_t>(kLeadingDim) * unknowns, 0.0) {}

  void set(std::size_t row, std::size_t col, double value) {
    const auto r = static_cast<lapack_int>(row);
    const auto c = static_cast<lapack_int>(col);
    storage_[static_cast<std::size_t>(kLower + kUpper + r - c + c * kLeadingDim)] = value;
  }

  /// Overwrites rhs with the solution; returns LAPACK's info code.
  lapack_int solve(std::vector<double>& rhs) {
    std::vector<lapack_int> pivots(static_cast<std::size_t>(size_));
    return LAPACKE_dgbsv(LAPACK_COL_MAJOR, size_, kLower, kUpper, 1, storage_.data(), kLeadingDim,
                         pivots.data(), rhs.data(), size_);
  }

 private:
  lapack_int size_;
  std::vector<double> storage_;
};

void require_uniform(const CartesianProfile& profile) {
  if (!profile.mesh.is_uniform()) throw InvalidArgument("collocation requires a uniform mesh");
  if (profile.u.size() != profile.mesh.size() || profile.v.size() != profile.mesh.size()) {
    throw InvalidArgument("profile columns do not match the mesh size");
  }
}

BandedJacobian assemble_jacobian(const CartesianProfile& p) {
  const std::size_t n = p.mesh.size();
  const double h = p.mesh.spacing();
  const double eps2 = p.params.eps() * p.params.eps();
  const double lam2 = p.params.lambda() * p.params.lambda();
  const double a = lam2 * eps2 / (h * h);
  const double b = eps2 / (h * h);
  const double cross = 1.0 + eps2;

  BandedJacobian jac(2 * n);
  jac.set(0, 0, 1.0);
  jac.set(1, 1, 1.0);
  jac.set(2 * n - 2, 2 * n - 2, 1.0);
  jac.set(2 * n - 1, 2 * n - 1, 1.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double u = p.u[i];
    const double v = p.v[i];
    const std::size_t ru = 2 * i;
    const std::size_t rv = 2 * i + 1;
    jac.set(ru, ru - 2, a);
    jac.set(ru, ru + 2, a);
    jac.set(ru, ru, -2.0 * a - (3.0 * u * u - 1.0 + cross * v * v));
    jac.set(ru, rv, -2.0 * cross * u * v);
    jac.set(rv, rv - 2, b);
    jac.set(rv, rv + 2, b);
    jac.set(rv, rv, -2.0 * b - (3.0 * v * v - 1.0 + cross * u * u));
    jac.set(rv, ru, -2.0 * cross * u * v);
  }
  return jac;
}

double sup_norm(const std::vector<double>& r) {
  double m = 0.0;
  for (double x : r) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(x));
  }
  return m;
}

}  // namespace

SolverConfig SolverConfig::defaults(double lambda) {
  SolverConfig config;
  config.half_length = 24.0 * std::max(1.0, lambda);
  return config;
}

void SolverConfig::validate() const {
  if (!(half_length > 0.0)) throw InvalidArgument("solver half-length must be positive");
  if (n < 101 || n % 2 == 0) {
    throw InvalidArgument("solver mesh needs an odd node count >= 101, got " + std::to_string(n));
  }
  if (!(newton_tol > 0.0)) throw InvalidArgument("newton_tol must be positive");
  if (max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
  if (!(damping > 0.0 && damping < 1.0)) throw InvalidArgument("damping must lie in (0, 1)");
  for (double e : continuation_steps) {
    if (!(e > 0.0)) throw InvalidArgument("continuation steps must be positive");
  }
}

std::vector<double> assemble_residual(const CartesianProfile& p) {
  require_uniform(p);
  const std::size_t n = p.mesh.size();
  const double h = p.mesh.spacing();
  const double eps2 = p.params.eps() * p.params.eps();
  const double lam2 = p.params.lambda() * p.params.lambda();
  const double inv_h2 = 1.0 / (h * h);

  std::vector<double> r(2 * n);
  r[0] = p.u[0] - p.bc.left_u;
  r[1] = p.v[0] - p.bc.left_v;
  r[2 * n - 2] = p.u[n - 1] - p.bc.right_u;
  r[2 * n - 1] = p.v[n - 1] - p.bc.right_v;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double u = p.u[i];
    const double v = p.v[i];
    const double d2u = (p.u[i - 1] - 2.0 * u + p.u[i + 1]) * inv_h2;
    const double d2v = (p.v[i - 1] - 2.0 * v + p.v[i + 1]) * inv_h2;
    r[2 * i] = lam2 * eps2 * d2u - (u * u * u - u + v * v * u + eps2 * v * v * u);
    r[2 * i + 1] = eps2 * d2v - (v * v * v - v + u * u * v + eps2 * u * u * v);
  }
  return r;
}

double residual_norm(const CartesianProfile& profile) { return sup_norm(assemble_residual(profile)); }

NewtonTrace newton_solve_traced(CartesianProfile guess, const SolverConfig& config) {
  config.validate();
  require_uniform(guess);
  const std::size_t n = guess.mesh.size();
  const double eps = guess.params.eps();

  NewtonTrace trace{std::move(guess), {}, 0};
  CartesianProfile& current = trace.profile;
  auto residual = assemble_residual(current);
  double norm = sup_norm(residual);
  trace.residual_history.push_back(norm);

  while (norm > config.newton_tol) {
    if (trace.iterations >= config.max_iter) {
      throw NoConvergence("Newton reached max_iter = " + std::to_string(config.max_iter) +
                              " with residual " + std::to_string(norm),
                          current, eps);
    }
    auto jac = assemble_jacobian(current);
    std::vector<double> step(residual.size());
    std::transform(residual.begin(), residual.end(), step.begin(), std::negate<>());
    if (const lapack_int info = jac.solve(step); info != 0) {
      throw SingularJacobian("banded elimination failed (LAPACK info " + std::to_string(info) + ")",
                             current);
    }

    // Backtrack until the sup-norm does not increase.
    double scale = 1.0;
    CartesianProfile trial = current;
    double trial_norm = std::numeric_limits<double>::infinity();
    std::vector<double> trial_residual;
    for (int halvings = 0; halvings < 60; ++halvings) {
      for (std::size_t i = 0; i < n; ++i) {
        trial.u[i] = current.u[i] + scale * step[2 * i];
        trial.v[i] = current.v[i] + scale * step[2 * i + 1];
      }
      trial_residual = assemble_residual(trial);
      trial_norm = sup_norm(trial_residual);
      if (trial_norm <= norm) break;
      scale *= config.damping;
    }
    if (!(trial_norm <= norm)) {
      throw NoConvergence("damped Newton could not reduce residual " + std::to_string(norm), current,
                          eps);
    }
    current = std::move(trial);
    residual = std::move(trial_residual);
    norm = trial_norm;
    ++trace.iterations;
    trace.residual_history.push_back(norm);
  }
  return trace;
}

CartesianProfile newton_solve(CartesianProfile guess, const SolverConfig& config) {
  return newton_solve_traced(std::move(guess), config).profile;
}

HeteroclinicSolve solve_heteroclinic_traced(const ModelParams& params, const SolverConfig& config) {
  config.validate();
  const double target = params.eps();
  if (target > kMaxEps) {
    throw InvalidArgument("eps = " + std::to_string(target) + " is outside the solver envelope eps <= " +
                          std::to_string(kMaxEps));
  }
  const double lambda = params.lambda();
  const auto reduced = solve_reduced(lambda, config.half_length, config.n);

  HeteroclinicSolve out{composite_guess(reduced, params), {}};
  auto attempt = [&](CartesianProfile guess) -> std::optional<CartesianProfile> {
    const double eps = guess.params.eps();
    try {
      auto trace = newton_solve_traced(std::move(guess), config);
      out.ladder.push_back({eps, true, trace.iterations});
      return std::move(trace.profile);
    } catch (const NoConvergence&) {
    } catch (const SingularJacobian&) {
    }
    out.ladder.push_back({eps, false, 0});
    return std::nullopt;
  };

  if (auto direct = attempt(out.profile)) {
    out.profile = recenter(*direct);
    return out;
  }

  std::vector<double> rungs;
  for (double e : config.continuation_steps) {
    if (e > target && e <= kMaxEps) rungs.push_back(e);
  }
  std::sort(rungs.begin(), rungs.end(), std::greater<>());
  rungs.push_back(target);

  std::optional<CartesianProfile> previous;
  for (double e : rungs) {
    const auto rung_params = ModelParams::from_eps(lambda, e);
    CartesianProfile guess = previous ? *previous : composite_guess(reduced, rung_params);
    guess.params = rung_params;
    if (auto solved = attempt(std::move(guess))) {
      previous = std::move(solved);
      continue;
    }
    // Before anything converged, keep descending with fresh composite guesses.
    if (!previous) continue;
    throw NoConvergence("continuation stalled at eps = " + std::to_string(e), *previous, e);
  }
  if (!previous) {
    throw NoConvergence("no rung of the continuation ladder converged", out.profile, target);
  }
  out.profile = recenter(*previous);
  return out;
}

CartesianProfile solve_heteroclinic(const ModelParams& params, const SolverConfig& config) {
  return solve_heteroclinic_traced(params, config).profile;
}

CartesianProfile solve_heteroclinic(const ModelParams& params) {
  return solve_heteroclinic(params, SolverConfig::defaults(params.lambda()));
}

double locate_center(const CartesianProfile& p) {
  const std::size_t n = p.mesh.size();
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = p.u[i] - p.v[i];

  int crossings = 0;
  int last_sign = 0;
  std::size_t bracket = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int sign = (diff[i] > 0) - (diff[i] < 0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) {
      ++crossings;
      bracket = i;
    }
    last_sign = sign;
  }
  if (crossings == 0) throw InvalidArgument("u - v does not change sign on the mesh");
  if (crossings > 1) {
    throw MultipleCrossings("u - v changes sign " + std::to_string(crossings) + " times");
  }
  // Walk back over exact zeros to the last nonzero node before the sign change.
  std::size_t lo = bracket - 1;
  while (diff[lo] == 0.0) {
    if (lo == 0 || diff[lo - 1] != 0.0) return p.mesh[lo];
    --lo;
  }
  const std::size_t hi = bracket;
  if (hi != lo + 1) return p.mesh[lo + 1];

  const double x_lo = p.mesh[lo];
  const double x_hi = p.mesh[hi];
  const double linear = x_lo - diff[lo] * (x_hi - x_lo) / (diff[hi] - diff[lo]);
  if (!p.mesh.is_uniform() || n < 4) return linear;

  // Bisection on the cubic interpolant within the bracket.
  const double x0 = p.mesh.front();
  const double h = p.mesh.spacing();
  double a = x_lo;
  double b = x_hi;
  const double fa_sign = diff[lo] > 0 ? 1.0 : -1.0;
  for (int it = 0; it < 80 && b - a > 0.0; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid == a || mid == b) break;
    const double fm = numerics::cubic_interpolate(diff, x0, h, mid);
    if (fm == 0.0) return mid;
    if ((fm > 0 ? 1.0 : -1.0) == fa_sign) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

CartesianProfile recenter(const CartesianProfile& p) {
  if (!p.mesh.is_uniform()) throw InvalidArgument("recenter requires a uniform mesh");
  const double shift = locate_center(p);
  const std::size_t n = p.mesh.size();
  const double x0 = p.mesh.front();
  const double x1 = p.mesh.back();
  const double h = p.mesh.spacing();

  CartesianProfile out = p;
  for (std::size_t i = 0; i < n; ++i) {
    const double source = p.mesh[i] + shift;
    if (source <= x0) {
      out.u[i] = p.bc.left_u;
      out.v[i] = p.bc.left_v;
    } else if (source >= x1) {
      out.u[i] = p.bc.right_u;
      out.v[i] = p.bc.right_v;
    } else {
      out.u[i] = numerics::cubic_interpolate(p.u, x0, h, source);
      out.v[i] = numerics::cubic_interpolate(p.v, x0, h, source);
    }
  }
  out.u.front() = p.bc.left_u;
  out.v.front() = p.bc.left_v;
  out.u.back() = p.bc.right_u;
  out.v.back() = p.bc.right_v;
  out.center = p.center + shift;
  return out;
}

}  // namespace domainwall
