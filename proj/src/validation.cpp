#include "domainwall/validation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <numbers>
#include <thread>

#include "domainwall/numerics.hpp"

namespace domainwall {

namespace {

bool saturated(double a, double b, double lo, double hi) {
  const auto near = [](double value, double limit) { return std::abs(value - limit) <= kSaturationBand; };
  return (near(a, lo) && near(b, lo)) || (near(a, hi) && near(b, hi));
}

double phi_weight(double x, double lambda) { return std::min(std::exp(x / lambda), std::exp(-x)); }

bool monotone(const std::vector<double>& f, double sign, double lo, double hi) {
  bool resolved = false;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double step = sign * (f[i + 1] - f[i]);
    if (step > kRoundoffFloor) resolved = true;
    if (step > 0.0) continue;
    if (saturated(f[i], f[i + 1], lo, hi) && step >= -kRoundoffFloor) continue;
    return false;
  }
  return resolved;
}

}  // namespace

bool strictly_increasing(const std::vector<double>& f, double lo, double hi) {
  return monotone(f, 1.0, lo, hi);
}

bool strictly_decreasing(const std::vector<double>& f, double lo, double hi) {
  return monotone(f, -1.0, lo, hi);
}

bool disk_bound_holds(const CartesianProfile& p) {
  const std::size_t n = p.mesh.size();
  if (n < 3) return false;
  std::vector<double> defect(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double big = std::max(p.u[i], p.v[i]);
    const double small = std::min(p.u[i], p.v[i]);
    defect[i] = (1.0 - big) * (1.0 + big) - small * small;
  }
  // Interior nodes whose defect is resolved above roundoff, bracketing the saturated tails.
  std::size_t first = 1;
  while (first + 1 < n && defect[first] <= kRoundoffFloor) ++first;
  if (first + 1 >= n) return false;
  std::size_t last = n - 2;
  while (defect[last] <= kRoundoffFloor) --last;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (defect[i] > 0.0) continue;
    const bool tail = i < first || i > last;
    if (tail && defect[i] >= -kRoundoffFloor) continue;
    return false;
  }
  return true;
}

WeightedDeviation weighted_deviation(const CartesianProfile& profile, const ReducedSolution& reduced) {
  const double lambda = profile.params.lambda();
  const auto polar = cartesian_to_slowfast(profile);
  const double window =
      std::min(profile.mesh.half_length(), reduced.mesh.half_length()) - 2.0;
  const double w_window = 0.9 * window;
  const double eps2 = profile.params.eps() * profile.params.eps();
  const double x0 = reduced.mesh.front();
  const double h = reduced.mesh.spacing();

  WeightedDeviation d;
  for (std::size_t i = 1; i + 1 < profile.mesh.size(); ++i) {
    const double x = profile.mesh[i];
    if (std::abs(x) > window) continue;
    const double weight = phi_weight(x, lambda);
    const double phi1_0 = numerics::cubic_interpolate(reduced.phi1, x0, h, x);
    const double phi2_0 = numerics::cubic_interpolate(reduced.phi2, x0, h, x);
    d.phi1 = std::max(d.phi1, std::abs(polar.phi1[i] - phi1_0) / weight);
    d.phi2 = std::max(d.phi2, std::abs(polar.phi2[i] - phi2_0) / weight);
    const double on_manifold = critical_manifold_point(polar.phi1[i], polar.phi2[i], lambda).w1;
    if (std::abs(x) <= w_window && eps2 * on_manifold >= kResolvableRadialDefect) {
      d.w1 = std::max(d.w1, std::abs(polar.w1[i] - on_manifold) / (weight * weight));
    }
  }
  return d;
}

double energy_of_profile(const CartesianProfile& p) {
  const double h = p.mesh.spacing();
  const double eps = p.params.eps();
  const double lam2 = p.params.lambda() * p.params.lambda();
  const auto du = numerics::derivative(p.u, h);
  const auto dv = numerics::derivative(p.v, h);
  std::vector<double> density(p.mesh.size());
  for (std::size_t i = 0; i < density.size(); ++i) {
    const double u2 = p.u[i] * p.u[i];
    const double v2 = p.v[i] * p.v[i];
    const double defect = 1.0 - u2 - v2;
    density[i] = lam2 * eps * du[i] * du[i] / 2 + eps * dv[i] * dv[i] / 2 +
                 defect * defect / (4 * eps) + eps * u2 * v2 / 2;
  }
  return numerics::simpson(density, h);
}

ValidationReport validate_profile(const CartesianProfile& profile) {
  return validate_profile(profile, solve_reduced(profile.params.lambda()));
}

ValidationReport validate_profile(const CartesianProfile& p, const ReducedSolution& reduced) {
  ValidationReport r;
  const std::size_t n = p.mesh.size();
  const double lambda = p.params.lambda();

  for (double value : hamiltonian_column(p)) {
    r.hamiltonian_sup = std::max(r.hamiltonian_sup, std::abs(value));
  }
  r.monotone_u = strictly_increasing(p.u);
  r.monotone_v = strictly_decreasing(p.v);
  r.disk_bound = disk_bound_holds(p);

  // Polar columns can fail outright on garbage profiles; report instead of throwing.
  try {
    const auto polar = cartesian_to_slowfast(p);
    r.angle_decreasing = strictly_decreasing(polar.phi1, 0.0, std::numbers::pi / 2);
    r.phi2_negative = true;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (!(polar.phi2[i] < 0.0)) r.phi2_negative = false;
    }
    const double band = 0.9 * p.mesh.half_length();
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (std::abs(p.mesh[i]) > band) continue;
      const double target = critical_manifold_point(polar.phi1[i], polar.phi2[i], lambda).w1;
      r.manifold_distance = std::max(r.manifold_distance, std::abs(polar.w1[i] - target));
    }
    r.weighted_deviations = weighted_deviation(p, reduced);
  } catch (const Error&) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.angle_decreasing = false;
    r.phi2_negative = false;
    r.manifold_distance = nan;
    r.weighted_deviations = {nan, nan, nan};
  }

  if (lambda == 1.0) {
    double defect = 0.0;
    for (std::size_t i = 0; i < n; ++i) defect = std::max(defect, std::abs(p.u[i] - p.v[n - 1 - i]));
    r.symmetry_defect = defect;
  }
  r.energy = energy_of_profile(p);
  r.sigma_ratio = r.energy / p.params.eps();
  return r;
}

RateStudy rate_study(double lambda, const std::vector<double>& eps_list, const SolverConfig& config,
                     std::size_t workers) {
  if (eps_list.size() < 2) throw InvalidArgument("rate study needs at least two eps values");
  for (std::size_t k = 1; k < eps_list.size(); ++k) {
    if (!(eps_list[k] < eps_list[k - 1])) {
      throw InvalidArgument("rate study eps list must be strictly decreasing");
    }
  }
  const std::size_t count = eps_list.size();
  const auto reduced = solve_reduced(lambda);

  RateStudy study;
  study.lambda = lambda;
  study.eps_list = eps_list;
  study.sigma_limit = sigma_ratio_limit(lambda);
  std::vector<std::optional<CartesianProfile>> profiles(count);
  std::vector<std::optional<ValidationReport>> reports(count);
  std::vector<std::exception_ptr> failures(count);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        auto profile = solve_heteroclinic(ModelParams::from_eps(lambda, eps_list[k]), config);
        reports[k] = validate_profile(profile, reduced);
        profiles[k] = std::move(profile);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  const std::size_t pool = std::clamp<std::size_t>(workers, 1, count);
  std::vector<std::jthread> threads;
  for (std::size_t t = 1; t < pool; ++t) threads.emplace_back(work);
  work();
  threads.clear();

  for (std::size_t k = 0; k < count; ++k) {
    if (!failures[k]) continue;
    try {
      std::rethrow_exception(failures[k]);
    } catch (const NoConvergence& e) {
      throw NoConvergence("rate study failed at eps = " + std::to_string(eps_list[k]) + ": " + e.what(),
                          e.last_iterate(), eps_list[k]);
    }
  }

  std::vector<double> d1, d2, dw;
  for (std::size_t k = 0; k < count; ++k) {
    const auto& report = *reports[k];
    study.deviations.push_back(report.weighted_deviations);
    study.sigma_ratio.push_back(report.sigma_ratio);
    study.sigma_deviation.push_back(std::abs(report.sigma_ratio - study.sigma_limit));
    d1.push_back(report.weighted_deviations.phi1);
    d2.push_back(report.weighted_deviations.phi2);
    dw.push_back(report.weighted_deviations.w1);
    study.profiles.push_back(std::move(*profiles[k]));
    study.reports.push_back(report);
  }
  study.slopes = {numerics::loglog_slope(eps_list, d1), numerics::loglog_slope(eps_list, d2),
                  numerics::loglog_slope(eps_list, dw)};
  study.sigma_slope = numerics::loglog_slope(eps_list, study.sigma_deviation);
  for (std::size_t k = 1; k < count; ++k) {
    study.halving_ratios.push_back({d1[k] / d1[k - 1], d2[k] / d2[k - 1], dw[k] / dw[k - 1]});
    study.sigma_halving_ratios.push_back(study.sigma_deviation[k] / study.sigma_deviation[k - 1]);
  }
  return study;
}

}  // namespace domainwall
