#pragma once

#include <cstddef>
#include <vector>

#include "domainwall/model.hpp"

namespace domainwall {

/// Strictly increasing nodes; meshes built by `uniform` are symmetric about 0
/// with x = 0 an exact node.
class Mesh {
 public:
  /// n >= 3 odd nodes on [-L, L].
  static Mesh uniform(double half_length, std::size_t n);
  /// Adopts explicit nodes (e.g. read back from a file); detects uniform spacing.
  static Mesh from_nodes(std::vector<double> nodes);

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double operator[](std::size_t i) const noexcept { return nodes_[i]; }
  double front() const noexcept { return nodes_.front(); }
  double back() const noexcept { return nodes_.back(); }
  bool is_uniform() const noexcept { return uniform_; }
  /// Node spacing; only meaningful when is_uniform().
  double spacing() const noexcept { return h_; }
  double half_length() const noexcept { return (nodes_.back() - nodes_.front()) / 2; }

  friend bool operator==(const Mesh&, const Mesh&) = default;

 private:
  Mesh(std::vector<double> nodes, bool uniform, double h)
      : nodes_(std::move(nodes)), uniform_(uniform), h_(h) {}

  std::vector<double> nodes_;
  bool uniform_;
  double h_;
};

/// Dirichlet values imposed at x = -L and x = +L.
struct BoundaryValues {
  double left_u = 0.0;
  double left_v = 1.0;
  double right_u = 1.0;
  double right_v = 0.0;

  friend bool operator==(const BoundaryValues&, const BoundaryValues&) = default;
};

/// Discretized (u, v) on a slow-variable mesh.
///
/// `center` is the x0 with u(x0) = v(x0) located in the frame the profile had
/// before recentering; after `recenter` the crossing sits at x = 0 and center
/// keeps the removed translate.
struct CartesianProfile {
  Mesh mesh;
  std::vector<double> u;
  std::vector<double> v;
  ModelParams params;
  double center = 0.0;
  BoundaryValues bc{};
};

struct SlowFastProfile {
  Mesh mesh;
  double lambda = 1.0;
  double eps = 0.0;
  std::vector<double> w1;
  std::vector<double> w2;
  std::vector<double> phi1;
  std::vector<double> phi2;
};

/// Per-node derived quantities of a Cartesian profile, as written to profile CSVs.
struct ProfileColumns {
  std::vector<double> du_dx;
  std::vector<double> dv_dx;
  std::vector<double> w1;
  std::vector<double> w2;
  std::vector<double> phi1;
  std::vector<double> phi2;
  std::vector<double> ham_residual;
};

/// Polar form of a profile: R, phi1, w1 per node; phi2 and w2 by finite
/// differences of the phi1 and w1 columns. Throws DegenerateRadius if R <= 0.
SlowFastProfile cartesian_to_slowfast(const CartesianProfile& profile);

/// Nodewise u = R cos(phi1), v = R sin(phi1). Boundary descriptor is the default one.
CartesianProfile slowfast_to_cartesian(const SlowFastProfile& profile, const ModelParams& params);

/// Slow-frame derivatives, polar columns and the rescaled Hamiltonian residual.
ProfileColumns derived_columns(const CartesianProfile& profile);

/// Slow-frame Hamiltonian residual at each node using finite-difference derivatives.
std::vector<double> hamiltonian_column(const CartesianProfile& profile);

}  // namespace domainwall
