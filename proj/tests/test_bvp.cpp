#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "domainwall/bvp.hpp"
#include "domainwall/numerics.hpp"
#include "domainwall/singular_limit.hpp"
#include "domainwall/validation.hpp"

using namespace domainwall;
using doctest::Approx;

namespace {

CartesianProfile constant_fixture(std::size_t n) {
  const auto mesh = Mesh::uniform(10.0, n);
  return {mesh, std::vector<double>(n, 0.0), std::vector<double>(n, 1.0), ModelParams::from_eps(1.5, 0.3), 0.0,
          BoundaryValues{0.0, 1.0, 0.0, 1.0}};
}

// Profile value at x, with the Dirichlet limits outside the mesh.
double sample(const std::vector<double>& f, const Mesh& mesh, double x, double left, double right) {
  if (x <= mesh.front()) return left;
  if (x >= mesh.back()) return right;
  return numerics::cubic_interpolate(f, mesh.front(), mesh.spacing(), x);
}

CartesianProfile translated(const CartesianProfile& p, double by) {
  CartesianProfile out = p;
  for (std::size_t i = 0; i < p.mesh.size(); ++i) {
    out.u[i] = sample(p.u, p.mesh, p.mesh[i] - by, p.bc.left_u, p.bc.right_u);
    out.v[i] = sample(p.v, p.mesh, p.mesh[i] - by, p.bc.left_v, p.bc.right_v);
  }
  out.u.front() = p.bc.left_u;
  out.v.front() = p.bc.left_v;
  out.u.back() = p.bc.right_u;
  out.v.back() = p.bc.right_v;
  return out;
}

double sup_difference(const CartesianProfile& a, const CartesianProfile& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.u.size(); ++i) {
    d = std::max({d, std::abs(a.u[i] - b.u[i]), std::abs(a.v[i] - b.v[i])});
  }
  return d;
}

}  // namespace

TEST_CASE("solver configuration") {
  const auto c = SolverConfig::defaults(2.0);
  CHECK(c.half_length == 48.0);
  CHECK(c.n == 2401);
  CHECK(c.newton_tol == 1e-10);
  CHECK(c.max_iter == 25);
  CHECK(c.damping == 0.5);
  CHECK(c.continuation_steps == std::vector<double>{0.4, 0.3, 0.2, 0.15, 0.1, 0.07, 0.05});
  CHECK(SolverConfig::defaults(0.5).half_length == 24.0);
  CHECK_NOTHROW(c.validate());
  auto bad = c;
  bad.n = 2400;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = c;
  bad.n = 99;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = c;
  bad.damping = 1.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = c;
  bad.newton_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("residual of the constant equilibrium vanishes") {
  const auto fixture = constant_fixture(101);
  const auto r = assemble_residual(fixture);
  CHECK(r.size() == 2 * fixture.mesh.size());
  CHECK(std::all_of(r.begin(), r.end(), [](double x) { return x == 0.0; }));
  CHECK(residual_norm(fixture) == 0.0);
}

TEST_CASE("residual rows follow the collocation formula") {
  const std::size_t n = 101;
  const auto mesh = Mesh::uniform(5.0, n);
  const auto params = ModelParams::from_eps(2.0, 0.3);
  CartesianProfile p{mesh, std::vector<double>(n), std::vector<double>(n), params, 0.0, {}};
  for (std::size_t i = 0; i < n; ++i) {
    p.u[i] = 0.5 + 0.4 * std::tanh(mesh[i]);
    p.v[i] = 0.5 - 0.3 * std::tanh(mesh[i]);
  }
  const auto r = assemble_residual(p);
  const double h = mesh.spacing();
  const double e2 = 0.09;
  for (std::size_t i : {1UL, 37UL, 50UL, 99UL}) {
    const double u = p.u[i];
    const double v = p.v[i];
    const double d2u = (p.u[i - 1] - 2 * u + p.u[i + 1]) / (h * h);
    const double d2v = (p.v[i - 1] - 2 * v + p.v[i + 1]) / (h * h);
    CHECK(r[2 * i] == Approx(4 * e2 * d2u - (u * u * u - u + v * v * u + e2 * v * v * u)).epsilon(1e-12));
    CHECK(r[2 * i + 1] == Approx(e2 * d2v - (v * v * v - v + u * u * v + e2 * u * u * v)).epsilon(1e-12));
  }
  // Dirichlet rows carry the boundary mismatch.
  CHECK(r[0] == Approx(p.u.front() - 0.0));
  CHECK(r[1] == Approx(p.v.front() - 1.0));
  CHECK(r[2 * n - 2] == Approx(p.u.back() - 1.0));
  CHECK(r[2 * n - 1] == Approx(p.v.back() - 0.0));

  auto irregular = p;
  irregular.mesh = Mesh::from_nodes({-1.0, 0.0, 0.5, 1.0});
  irregular.u.resize(4);
  irregular.v.resize(4);
  CHECK_THROWS_AS(assemble_residual(irregular), InvalidArgument);
}

TEST_CASE("composite guess residual regression") {
  // Frozen from the reference run: 1.161e-3 at eps = 0.2 (h = 0.01), i.e. about 0.145 eps^3.
  const auto reduced = solve_reduced(1.0, 24.0, 4801);
  const double eps = 0.2;
  const double r = residual_norm(composite_guess(reduced, ModelParams::from_eps(1.0, eps)));
  CHECK(r <= 0.15 * eps * eps * eps);
  CHECK(r >= 0.10 * eps * eps * eps);
  const double smaller = residual_norm(composite_guess(reduced, ModelParams::from_eps(1.0, eps / 2)));
  CHECK(smaller < r / 8);
}

TEST_CASE("newton from the composite guess") {
  const auto config = SolverConfig::defaults(1.0);
  const auto reduced = solve_reduced(1.0, config.half_length, config.n);
  const auto trace = newton_solve_traced(composite_guess(reduced, ModelParams::from_eps(1.0, 0.2)), config);
  CHECK(trace.iterations >= 1);
  CHECK(trace.iterations <= config.max_iter);
  CHECK(trace.residual_history.size() == static_cast<std::size_t>(trace.iterations) + 1);
  CHECK(trace.residual_history.back() <= config.newton_tol);
  CHECK(residual_norm(trace.profile) <= config.newton_tol);
  for (std::size_t k = 1; k < trace.residual_history.size(); ++k) {
    CHECK(trace.residual_history[k] <= trace.residual_history[k - 1]);
  }
  const auto report = validate_profile(recenter(trace.profile));
  CHECK(report.structure_ok());

  SUBCASE("exact solution is a fixed point") {
    const auto again = newton_solve_traced(trace.profile, config);
    CHECK(again.iterations <= 1);
    CHECK(sup_difference(again.profile, trace.profile) <= 1e-9);
  }
}

TEST_CASE("newton tail is quadratic") {
  // Frozen constant: r_{k+1} <= C r_k^2 with C = 100 (largest observed about 37).
  constexpr double kQuadraticConstant = 100.0;
  for (double lambda : {1.0, 2.0, 4.0}) {
    for (double eps : {0.5, 0.4, 0.2, 0.1}) {
      const auto config = SolverConfig::defaults(lambda);
      const auto reduced = solve_reduced(lambda, config.half_length, config.n);
      const auto trace = newton_solve_traced(composite_guess(reduced, ModelParams::from_eps(lambda, eps)), config);
      const auto& r = trace.residual_history;
      for (std::size_t k = 0; k + 1 < r.size(); ++k) {
        if (r[k] < 1e-4 && r[k + 1] >= 10 * config.newton_tol) {
          CAPTURE(lambda);
          CAPTURE(eps);
          CHECK(r[k + 1] <= kQuadraticConstant * r[k] * r[k]);
        }
      }
    }
  }
}

TEST_CASE("bad guess does not converge") {
  // Documented basin limit: a flat (1/2, 1/2) interior stalls.
  const auto config = SolverConfig::defaults(1.0);
  const auto mesh = Mesh::uniform(config.half_length, config.n);
  CartesianProfile guess{mesh, std::vector<double>(config.n, 0.5), std::vector<double>(config.n, 0.5),
                         ModelParams::from_eps(1.0, 0.2), 0.0, {}};
  guess.u.front() = 0.0;
  guess.v.front() = 1.0;
  guess.u.back() = 1.0;
  guess.v.back() = 0.0;
  try {
    const auto solved = newton_solve(guess, config);
    // Any converged artifact must be flagged.
    CHECK_FALSE(validate_profile(solved).structure_ok());
  } catch (const NoConvergence& e) {
    CHECK(e.eps() == Approx(0.2));
    CHECK(e.last_iterate().mesh == mesh);
    CHECK(residual_norm(e.last_iterate()) > config.newton_tol);
  }
}

TEST_CASE("heteroclinic at lambda = 1, eps = 0.2") {
  const auto solve = solve_heteroclinic_traced(ModelParams::from_eps(1.0, 0.2), SolverConfig::defaults(1.0));
  const auto& p = solve.profile;
  REQUIRE(solve.ladder.size() == 1);
  CHECK(solve.ladder[0].converged);
  CHECK(solve.ladder[0].eps == 0.2);
  const std::size_t mid = p.mesh.size() / 2;
  const double h = p.mesh.spacing();
  CHECK(p.mesh[mid] == 0.0);
  CHECK(std::abs(p.u[mid] - p.v[mid]) <= h * h);
  CHECK(std::abs(locate_center(p)) <= h * h);
  CHECK(p.u.front() == 0.0);
  CHECK(p.v.front() == 1.0);
  CHECK(p.u.back() == 1.0);
  CHECK(p.v.back() == 0.0);
  const auto polar = cartesian_to_slowfast(p);
  for (std::size_t i = 1; i + 1 < p.mesh.size(); ++i) REQUIRE(polar.phi2[i] < 0.0);
  // Reflection u(x) = v(-x).
  double symmetry = 0;
  for (std::size_t i = 0; i < p.mesh.size(); ++i) {
    symmetry = std::max(symmetry, std::abs(p.u[i] - p.v[p.mesh.size() - 1 - i]));
  }
  CHECK(symmetry <= h * h);
  const auto report = validate_profile(p);
  CHECK(report.hamiltonian_sup <= 5e-4);
}

TEST_CASE("energy at lambda = 2, eps = 0.1") {
  const auto p = solve_heteroclinic(ModelParams::from_eps(2.0, 0.1));
  CHECK(energy_of_profile(p) == Approx(7.0 / 9.0 * 0.1).epsilon(0.1));
}

TEST_CASE("eps outside the envelope") {
  CHECK_THROWS_AS(solve_heteroclinic(ModelParams::from_eps(1.0, 0.6)), InvalidArgument);
  CHECK_NOTHROW(solve_heteroclinic(ModelParams::from_eps(1.0, 0.5)));
}

TEST_CASE("ladder failure carries the stalled eps") {
  auto config = SolverConfig::defaults(1.0);
  config.max_iter = 1;
  try {
    solve_heteroclinic_traced(ModelParams::from_eps(1.0, 0.12), config);
    FAIL("expected NoConvergence");
  } catch (const NoConvergence& e) {
    CHECK(e.eps() == Approx(0.12));
  }
}

TEST_CASE("continuation is deterministic") {
  auto config = SolverConfig::defaults(2.0);
  config.max_iter = 2;
  const auto params = ModelParams::from_eps(2.0, 0.5);
  auto run = [&] {
    try {
      return solve_heteroclinic_traced(params, config).ladder;
    } catch (const NoConvergence& e) {
      return std::vector<LadderStep>{{e.eps(), false, -1}};
    }
  };
  CHECK(run() == run());
  const auto a = solve_heteroclinic_traced(ModelParams::from_eps(1.5, 0.1), SolverConfig::defaults(1.5));
  const auto b = solve_heteroclinic_traced(ModelParams::from_eps(1.5, 0.1), SolverConfig::defaults(1.5));
  CHECK(a.ladder == b.ladder);
  CHECK(a.profile.u == b.profile.u);
  CHECK(a.profile.v == b.profile.v);
  CHECK(a.profile.center == b.profile.center);
}

TEST_CASE("recenter") {
  const auto p = solve_heteroclinic(ModelParams::from_eps(2.0, 0.2));
  const double h = p.mesh.spacing();

  SUBCASE("idempotent on a centered profile") {
    const auto q = recenter(p);
    CHECK(std::abs(q.center - p.center) <= h * h);
    CHECK(sup_difference(p, q) <= h * h);
  }
  SUBCASE("recovers an artificial shift") {
    const auto shifted = translated(p, 0.5);
    CHECK(locate_center(shifted) == Approx(0.5).epsilon(h * h));
    const auto back = recenter(shifted);
    CHECK(back.center - shifted.center == Approx(0.5).epsilon(h * h));
    CHECK(sup_difference(back, p) <= h * h);
  }
  SUBCASE("crossing on a node") {
    auto q = p;
    const std::size_t mid = q.mesh.size() / 2;
    q.v[mid] = q.u[mid];
    CHECK(locate_center(q) == 0.0);
  }
  SUBCASE("defective profiles") {
    auto wavy = p;
    const std::size_t n = wavy.mesh.size();
    for (std::size_t i = 0; i < n; ++i) {
      wavy.u[i] = 0.5 + 0.1 * std::sin(wavy.mesh[i]);
      wavy.v[i] = 0.5;
    }
    CHECK_THROWS_AS(recenter(wavy), MultipleCrossings);
    auto flat = p;
    std::fill(flat.u.begin(), flat.u.end(), 0.2);
    std::fill(flat.v.begin(), flat.v.end(), 0.7);
    CHECK_THROWS_AS(locate_center(flat), InvalidArgument);
  }
}

TEST_CASE("second-order discretization") {
  std::vector<CartesianProfile> ladder;
  for (std::size_t n : {1201UL, 2401UL, 4801UL}) {
    auto config = SolverConfig::defaults(1.0);
    config.n = n;
    ladder.push_back(solve_heteroclinic(ModelParams::from_eps(1.0, 0.2), config));
  }
  auto restricted_difference = [](const CartesianProfile& coarse, const CartesianProfile& fine) {
    const std::size_t stride = (fine.mesh.size() - 1) / (coarse.mesh.size() - 1);
    double d = 0;
    for (std::size_t i = 0; i < coarse.mesh.size(); ++i) {
      d = std::max({d, std::abs(coarse.u[i] - fine.u[i * stride]), std::abs(coarse.v[i] - fine.v[i * stride])});
    }
    return d;
  };
  const double ratio = restricted_difference(ladder[0], ladder[1]) / restricted_difference(ladder[1], ladder[2]);
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);
}
