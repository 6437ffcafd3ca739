#include "domainwall/profile.hpp"

#include <cmath>
#include <string>

#include "domainwall/numerics.hpp"

namespace domainwall {

Mesh Mesh::uniform(double half_length, std::size_t n) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw InvalidArgument("mesh half-length must be positive");
  }
  if (n < 3 || n % 2 == 0) {
    throw InvalidArgument("mesh needs an odd node count >= 3, got " + std::to_string(n));
  }
  const auto intervals = static_cast<double>(n - 1);
  const double scale = half_length / intervals;
  std::vector<double> nodes(n);
  const auto last = static_cast<std::ptrdiff_t>(n - 1);
  for (std::ptrdiff_t i = 0; i <= last; ++i) {
    // Integer numerator keeps the mesh exactly symmetric with an exact 0 node.
    nodes[static_cast<std::size_t>(i)] = static_cast<double>(2 * i - last) * scale;
  }
  nodes.front() = -half_length;
  nodes.back() = half_length;
  return Mesh(std::move(nodes), true, 2.0 * half_length / intervals);
}

Mesh Mesh::from_nodes(std::vector<double> nodes) {
  if (nodes.size() < 3) throw InvalidArgument("mesh needs at least 3 nodes");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1])) {
      throw InvalidArgument("mesh nodes must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
  const double h = (nodes.back() - nodes.front()) / static_cast<double>(nodes.size() - 1);
  bool uniform = true;
  for (std::size_t i = 1; i < nodes.size() && uniform; ++i) {
    uniform = std::abs((nodes[i] - nodes[i - 1]) - h) <= 1e-9 * h;
  }
  return Mesh(std::move(nodes), uniform, h);
}

namespace {

double uniform_spacing(const Mesh& mesh) {
  if (!mesh.is_uniform()) throw InvalidArgument("finite-difference columns require a uniform mesh");
  return mesh.spacing();
}

}  // namespace

SlowFastProfile cartesian_to_slowfast(const CartesianProfile& profile) {
  const std::size_t n = profile.mesh.size();
  const double eps = profile.params.eps();
  const double eps2 = eps * eps;
  SlowFastProfile out{profile.mesh, profile.params.lambda(), eps, {}, {}, {}, {}};
  out.w1.resize(n);
  out.phi1.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::hypot(profile.u[i], profile.v[i]);
    if (!(r > 0.0)) {
      throw DegenerateRadius("R = 0 at node " + std::to_string(i) + " (x = " +
                             std::to_string(profile.mesh[i]) + ")");
    }
    out.w1[i] = (1.0 - r) / eps2;
    out.phi1[i] = quadrant_angle(profile.u[i], profile.v[i]);
  }
  const double h = uniform_spacing(profile.mesh);
  out.phi2 = numerics::derivative(out.phi1, h);
  out.w2 = numerics::derivative(out.w1, h);
  for (double& w : out.w2) w *= eps;
  return out;
}

CartesianProfile slowfast_to_cartesian(const SlowFastProfile& profile, const ModelParams& params) {
  const std::size_t n = profile.mesh.size();
  const double eps2 = params.eps() * params.eps();
  CartesianProfile out{profile.mesh, std::vector<double>(n), std::vector<double>(n), params, 0.0, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const double r = 1.0 - eps2 * profile.w1[i];
    if (!(r > 0.0)) {
      throw DegenerateRadius("R = 1 - eps^2 w1 <= 0 at node " + std::to_string(i));
    }
    out.u[i] = r * std::cos(profile.phi1[i]);
    out.v[i] = r * std::sin(profile.phi1[i]);
  }
  return out;
}

std::vector<double> hamiltonian_column(const CartesianProfile& profile) {
  const double h = uniform_spacing(profile.mesh);
  const auto du = numerics::derivative(profile.u, h);
  const auto dv = numerics::derivative(profile.v, h);
  std::vector<double> out(profile.mesh.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = hamiltonian_residual({profile.u[i], profile.v[i], du[i], dv[i], Frame::SlowX},
                                  profile.params);
  }
  return out;
}

ProfileColumns derived_columns(const CartesianProfile& profile) {
  const double h = uniform_spacing(profile.mesh);
  auto polar = cartesian_to_slowfast(profile);
  ProfileColumns out;
  out.du_dx = numerics::derivative(profile.u, h);
  out.dv_dx = numerics::derivative(profile.v, h);
  out.ham_residual = hamiltonian_column(profile);
  out.w1 = std::move(polar.w1);
  out.w2 = std::move(polar.w2);
  out.phi1 = std::move(polar.phi1);
  out.phi2 = std::move(polar.phi2);
  return out;
}

}  // namespace domainwall
