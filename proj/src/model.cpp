#include "domainwall/model.hpp"

#include <algorithm>
#include <numbers>
#include <string>

namespace domainwall {

namespace {

constexpr double kAngleClampTol = 1e-12;

void require_lambda(double lambda) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be a finite value >= 1, got " + std::to_string(lambda));
  }
}

}  // namespace

ModelParams ModelParams::from_eps(double lambda, double eps) {
  require_lambda(lambda);
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw InvalidArgument("eps must be a finite value > 0, got " + std::to_string(eps));
  }
  return ModelParams(lambda, 1.0 + eps * eps, eps);
}

ModelParams ModelParams::from_coupling(double lambda, double coupling) {
  require_lambda(lambda);
  if (!(coupling > 1.0) || !std::isfinite(coupling)) {
    throw InvalidArgument("coupling must be a finite value > 1, got " + std::to_string(coupling));
  }
  return ModelParams(lambda, coupling, std::sqrt(coupling - 1.0));
}

ModelParams ModelParams::from_pair(double lambda, double coupling, double eps) {
  const auto check = from_coupling(lambda, coupling);
  if (std::abs(check.eps() * check.eps() - eps * eps) > 1e-12 * coupling) {
    throw InvalidArgument("eps and coupling are inconsistent: eps^2 != coupling - 1");
  }
  return ModelParams(lambda, coupling, eps);
}

const char* to_string(EquilibriumSide side) noexcept {
  return side == EquilibriumSide::Left ? "left" : "right";
}

SlowFastState equilibrium_state(EquilibriumSide side) noexcept {
  if (side == EquilibriumSide::Left) return {0.0, 0.0, std::numbers::pi / 2, 0.0};
  return {0.0, 0.0, 0.0, 0.0};
}

Acceleration rhs_cartesian(const CartesianState& s, const ModelParams& p) {
  const double lam2 = p.lambda() * p.lambda();
  const double u2 = s.u * s.u;
  const double v2 = s.v * s.v;
  if (s.frame == Frame::FastZ) {
    return {(u2 * s.u - s.u + p.coupling() * v2 * s.u) / lam2,
            v2 * s.v - s.v + p.coupling() * u2 * s.v};
  }
  const double eps2 = p.eps() * p.eps();
  return {(u2 * s.u - s.u + v2 * s.u + eps2 * v2 * s.u) / (lam2 * eps2),
          (v2 * s.v - s.v + u2 * s.v + eps2 * u2 * s.v) / eps2};
}

double hamiltonian_residual(const CartesianState& s, const ModelParams& p) {
  const double lam2 = p.lambda() * p.lambda();
  const double defect = 1.0 - s.u * s.u - s.v * s.v;
  const double uv2 = s.u * s.u * s.v * s.v;
  if (s.frame == Frame::FastZ) {
    return lam2 * s.du * s.du / 2 + s.dv * s.dv / 2 - defect * defect / 4 -
           (p.coupling() - 1.0) / 2 * uv2;
  }
  const double eps2 = p.eps() * p.eps();
  return lam2 * s.du * s.du + s.dv * s.dv - defect * defect / (2 * eps2) - uv2;
}

double quadrant_angle(double u, double v) {
  const double phi = std::atan2(v, u);
  constexpr double kQuarter = std::numbers::pi / 2;
  if (phi < 0.0) {
    if (phi < -kAngleClampTol) throw AngleOutOfRange("angle " + std::to_string(phi) + " below 0");
    return 0.0;
  }
  if (phi > kQuarter) {
    if (phi > kQuarter + kAngleClampTol) {
      throw AngleOutOfRange("angle " + std::to_string(phi) + " above pi/2");
    }
    return kQuarter;
  }
  return phi;
}

SlowFastState cartesian_to_slowfast(const CartesianState& s, const ModelParams& p) {
  const double r = std::hypot(s.u, s.v);
  if (!(r > 0.0)) throw DegenerateRadius("R = 0 at a Cartesian state");
  const double eps = p.eps();
  double du = s.du;
  double dv = s.dv;
  if (s.frame == Frame::FastZ) {
    du *= eps;
    dv *= eps;
  }
  const double dr = (s.u * du + s.v * dv) / r;
  return {(1.0 - r) / (eps * eps), -dr / eps, quadrant_angle(s.u, s.v),
          (s.u * dv - s.v * du) / (r * r)};
}

CartesianState slowfast_to_cartesian(const SlowFastState& s, const ModelParams& p) {
  const double eps = p.eps();
  const double r = 1.0 - eps * eps * s.w1;
  if (!(r > 0.0)) throw DegenerateRadius("R = 1 - eps^2 w1 <= 0");
  const double c = std::cos(s.phi1);
  const double sn = std::sin(s.phi1);
  // R' = -eps^2 w1' = -eps w2.
  const double dr = -eps * s.w2;
  return {r * c, r * sn, dr * c - r * s.phi2 * sn, dr * sn + r * s.phi2 * c, Frame::SlowX};
}

Eigen::Vector4d slowfast_rhs(const SlowFastState& s, double lambda, double eps) {
  if (eps == 0.0) throw EpsilonZero();
  const double eps2 = eps * eps;
  const double r = 1.0 - eps2 * s.w1;
  if (!(r > 0.0)) throw DegenerateRadius("R = 1 - eps^2 w1 <= 0");
  const double inv_lam2 = 1.0 / (lambda * lambda);
  const double c = std::cos(s.phi1);
  const double sn = std::sin(s.phi1);
  const double c2 = c * c;
  const double s2 = sn * sn;
  const double radial = eps2 * s.w1 * s.w1 - 2.0 * s.w1;
  const double anisotropy = 1.0 + (inv_lam2 - 1.0) * c2;

  Eigen::Vector4d out;
  out[0] = s.w2 / eps;
  out[1] = (-r * s.phi2 * s.phi2 - r * radial * anisotropy -
            r * r * r * (inv_lam2 + 1.0) * s2 * c2) /
           eps;
  out[2] = s.phi2;
  out[3] = 2.0 * eps * s.w2 * s.phi2 / r + (1.0 - inv_lam2) * radial * sn * c +
           r * r * (sn * c2 * c - inv_lam2 * c * s2 * sn);
  return out;
}

Eigen::Vector4d slowfast_rhs(const SlowFastState& state, const ModelParams& params) {
  return slowfast_rhs(state, params.lambda(), params.eps());
}

Eigen::Matrix4d linearize_slowfast(const SlowFastState& state, const ModelParams& params,
                                   double step_scale) {
  const double lambda = params.lambda();
  const double eps = params.eps();
  auto field = [lambda, eps](const Eigen::Vector4d& y) {
    return slowfast_rhs(SlowFastState::from_vector(y), lambda, eps);
  };
  return finite_difference_jacobian(field, state.as_vector(), step_scale);
}

std::array<double, 4> real_eigenvalues(const Eigen::Matrix4d& jac, double imag_tol) {
  Eigen::EigenSolver<Eigen::Matrix4d> solver(jac, /*computeEigenvectors=*/false);
  const auto& values = solver.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    if (std::abs(values[i].imag()) > imag_tol * scale) {
      throw InvalidArgument("eigenvalue with nonzero imaginary part " +
                            std::to_string(values[i].imag()));
    }
    out[i] = values[i].real();
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

EquilibriumSpec analytic_spectrum(EquilibriumSide side, const ModelParams& params) {
  const double lambda = params.lambda();
  const double eps = params.eps();
  const double root2 = std::numbers::sqrt2;
  EquilibriumSpec spec{side, {}, {}};
  if (side == EquilibriumSide::Left) {
    const double fast = root2 / eps;
    const double slow = 1.0 / lambda;
    spec.eigenvalues = {fast, -fast, slow, -slow};
    spec.eigendirections = {Eigen::Vector4d(1.0 / root2, 1, 0, 0), Eigen::Vector4d(-1.0 / root2, 1, 0, 0),
                            Eigen::Vector4d(0, 0, lambda, 1), Eigen::Vector4d(0, 0, -lambda, 1)};
  } else {
    const double fast = root2 / (lambda * eps);
    spec.eigenvalues = {fast, -fast, 1.0, -1.0};
    spec.eigendirections = {Eigen::Vector4d(lambda / root2, 1, 0, 0),
                            Eigen::Vector4d(-lambda / root2, 1, 0, 0), Eigen::Vector4d(0, 0, 1, 1),
                            Eigen::Vector4d(0, 0, -1, 1)};
  }
  return spec;
}

}  // namespace domainwall
