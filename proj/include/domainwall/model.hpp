#pragma once

#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "domainwall/errors.hpp"

namespace domainwall {

/// Stiffness ratio lambda >= 1 and coupling Lambda > 1, with eps = sqrt(Lambda - 1).
///
/// eps is the canonical parameter; the coupling is stored alongside so that
/// eps^2 == coupling - 1 holds to machine precision whichever one was given.
class ModelParams {
 public:
  static ModelParams from_eps(double lambda, double eps);
  static ModelParams from_coupling(double lambda, double coupling);
  /// Restores a stored pair verbatim; eps^2 and coupling - 1 must agree to 1e-12 relative.
  static ModelParams from_pair(double lambda, double coupling, double eps);

  double lambda() const noexcept { return lambda_; }
  double coupling() const noexcept { return coupling_; }
  double eps() const noexcept { return eps_; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  ModelParams(double lambda, double coupling, double eps)
      : lambda_(lambda), coupling_(coupling), eps_(eps) {}

  double lambda_;
  double coupling_;
  double eps_;
};

/// Which independent variable the derivatives refer to: z (original) or x = eps z.
enum class Frame { FastZ, SlowX };

struct CartesianState {
  double u = 0.0;
  double v = 0.0;
  double du = 0.0;
  double dv = 0.0;
  Frame frame = Frame::SlowX;
};

/// (w1, w2, phi1, phi2) with u = R cos(phi1), v = R sin(phi1), R = 1 - eps^2 w1,
/// w2 = eps w1', phi2 = phi1'. Derivatives are with respect to x.
struct SlowFastState {
  double w1 = 0.0;
  double w2 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;

  Eigen::Vector4d as_vector() const { return {w1, w2, phi1, phi2}; }
  static SlowFastState from_vector(const Eigen::Vector4d& y) { return {y[0], y[1], y[2], y[3]}; }
};

struct Acceleration {
  double ddu = 0.0;
  double ddv = 0.0;
};

enum class EquilibriumSide {
  Left,   // (w1, w2, phi1, phi2) = (0, 0, pi/2, 0), i.e. (u, v) = (0, 1)
  Right,  // (0, 0, 0, 0), i.e. (u, v) = (1, 0)
};

const char* to_string(EquilibriumSide side) noexcept;
SlowFastState equilibrium_state(EquilibriumSide side) noexcept;

/// Linearization spectrum of the slow-fast field at one of the two equilibria.
/// Entries are ordered (+fast, -fast, +slow, -slow); directions are normalized
/// with last nonzero coordinate equal to 1.
struct EquilibriumSpec {
  EquilibriumSide side;
  std::array<double, 4> eigenvalues;
  std::array<Eigen::Vector4d, 4> eigendirections;
};

/// Second derivatives (u'', v'') in the state's frame.
Acceleration rhs_cartesian(const CartesianState& state, const ModelParams& params);

/// First integral evaluated at a state; zero along connecting orbits.
///
/// FastZ: lambda^2 u_z^2/2 + v_z^2/2 - (1-u^2-v^2)^2/4 - (Lambda-1)/2 u^2 v^2.
/// SlowX: the same quantity divided by eps^2/2 and written with x-derivatives,
/// lambda^2 u'^2 + v'^2 - (1-u^2-v^2)^2/(2 eps^2) - u^2 v^2.
double hamiltonian_residual(const CartesianState& state, const ModelParams& params);

/// Polar decomposition of a single slow-frame Cartesian state.
/// Throws DegenerateRadius when R <= 0 and AngleOutOfRange off the quadrant.
SlowFastState cartesian_to_slowfast(const CartesianState& state, const ModelParams& params);

/// Inverse of cartesian_to_slowfast; the result is in the SlowX frame.
CartesianState slowfast_to_cartesian(const SlowFastState& state, const ModelParams& params);

/// Four-quadrant angle of (u, v), clamped into [0, pi/2] when outside by at most 1e-12.
double quadrant_angle(double u, double v);

/// Right-hand side (w1', w2', phi1', phi2') of the slow-fast system.
Eigen::Vector4d slowfast_rhs(const SlowFastState& state, double lambda, double eps);
Eigen::Vector4d slowfast_rhs(const SlowFastState& state, const ModelParams& params);

/// Central-difference Jacobian of an R^4 -> R^4 field. Step per coordinate is
/// step_scale * max(1, |y_j|); the default scale is cbrt(machine epsilon).
template <typename Field>
Eigen::Matrix4d finite_difference_jacobian(Field&& field, const Eigen::Vector4d& y,
                                           double step_scale = std::cbrt(std::numeric_limits<double>::epsilon())) {
  Eigen::Matrix4d jac;
  for (int j = 0; j < 4; ++j) {
    const double h = step_scale * std::max(1.0, std::abs(y[j]));
    Eigen::Vector4d yp = y;
    Eigen::Vector4d ym = y;
    yp[j] += h;
    ym[j] -= h;
    // Use the realized step so the stencil is exact on linear fields.
    const double span = yp[j] - ym[j];
    jac.col(j) = (field(yp) - field(ym)) / span;
  }
  return jac;
}

Eigen::Matrix4d linearize_slowfast(const SlowFastState& state, const ModelParams& params,
                                   double step_scale = std::cbrt(std::numeric_limits<double>::epsilon()));

/// Eigenvalues of a 4x4 matrix whose spectrum is expected to be real; throws
/// InvalidArgument if an imaginary part exceeds imag_tol relative to the largest modulus.
std::array<double, 4> real_eigenvalues(const Eigen::Matrix4d& jac, double imag_tol = 1e-8);

EquilibriumSpec analytic_spectrum(EquilibriumSide side, const ModelParams& params);

}  // namespace domainwall
