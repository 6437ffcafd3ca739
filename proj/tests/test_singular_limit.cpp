#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "domainwall/singular_limit.hpp"

using namespace domainwall;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t node_at(const Mesh& mesh, double x) {
  const auto& nodes = mesh.nodes();
  const auto it = std::min_element(nodes.begin(), nodes.end(),
                                   [x](double a, double b) { return std::abs(a - x) < std::abs(b - x); });
  return static_cast<std::size_t>(it - nodes.begin());
}

}  // namespace

TEST_CASE("critical manifold") {
  for (double lambda : {1.0, 2.0, 5.0}) {
    const auto m = critical_manifold_point(0, 0, lambda);
    CHECK(m.w1 == 0.0);
    CHECK(m.w2 == 0.0);
  }
  CHECK(critical_manifold_point(kPi / 4, 0, 1.0).w1 == Approx(0.25));
  CHECK(critical_manifold_point(kPi / 2, 0.3, 2.0).w1 == Approx(0.045));
  CHECK(critical_manifold_point(kPi / 4, -0.5, 1.0).w1 == Approx(0.375));
}

TEST_CASE("reduced right side") {
  for (double lambda : {1.0, 2.0, 7.0}) {
    CHECK(reduced_rhs(0.0, lambda) == 0.0);
    CHECK(std::abs(reduced_rhs(kPi / 2, lambda)) < 1e-16);
  }
  CHECK(reduced_rhs(kPi / 4, 1.0) == Approx(-0.5));
  CHECK(reduced_rhs(kPi / 4, 2.0) == Approx(-0.31622776601683794));
}

TEST_CASE("reduced right side is negative inside the quadrant") {
  for (double lambda : {1.0, 1.01, 1.5, 2.0, 4.0, 10.0, 100.0}) {
    const int samples = 20000;
    for (int k = 1; k < samples; ++k) {
      const double phi = (kPi / 2) * k / samples;
      REQUIRE(reduced_rhs(phi, lambda) < 0.0);
    }
  }
}

TEST_CASE("reduced solution at lambda = 1 matches the closed form") {
  const auto red = solve_reduced(1.0);
  CHECK(red.mesh.half_length() == Approx(12.0));
  CHECK(red.mesh.size() == kDefaultReducedNodes);
  const std::size_t mid = red.mesh.size() / 2;
  CHECK(red.mesh[mid] == 0.0);
  CHECK(red.phi1[mid] == kPi / 4);
  double sup = 0;
  for (std::size_t i = 0; i < red.mesh.size(); ++i) {
    sup = std::max(sup, std::abs(red.phi1[i] - std::atan(std::exp(-red.mesh[i]))));
  }
  CHECK(sup <= 1e-10);
  CHECK(red.phi1[node_at(red.mesh, 1.0)] == Approx(0.352513421777619).epsilon(1e-9));
  CHECK(red.phi1[node_at(red.mesh, -1.0)] == Approx(1.2182829050172777).epsilon(1e-9));
  CHECK(red.phi2[mid] == Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("reduced solution invariants") {
  for (double lambda : {1.0, 1.5, 2.0, 4.0}) {
    const auto red = solve_reduced(lambda);
    CHECK(red.lambda == lambda);
    CHECK(red.mesh.half_length() == Approx(12.0 * lambda));
    const std::size_t n = red.mesh.size();
    bool decreasing = true;
    bool negative = true;
    bool inside = true;
    double conservation = 0;
    double integration = 0;
    const double h = red.mesh.spacing();
    for (std::size_t i = 0; i < n; ++i) {
      const double c = std::cos(red.phi1[i]);
      const double s2 = std::sin(2 * red.phi1[i]);
      const double lhs = (1 + (1 / (lambda * lambda) - 1) * c * c) * red.phi2[i] * red.phi2[i];
      conservation = std::max(conservation, std::abs(lhs - s2 * s2 / (4 * lambda * lambda)));
      if (i + 1 < n && !(red.phi1[i + 1] < red.phi1[i])) decreasing = false;
      if (i > 0 && i + 1 < n) {
        if (!(red.phi2[i] < 0)) negative = false;
        if (!(red.phi1[i] > 0 && red.phi1[i] < kPi / 2)) inside = false;
      }
      // phi2 must integrate to phi1 (Simpson over two intervals).
      if (i >= 2) {
        const double simpson = h / 3 * (red.phi2[i - 2] + 4 * red.phi2[i - 1] + red.phi2[i]);
        integration = std::max(integration, std::abs(red.phi1[i] - red.phi1[i - 2] - simpson));
      }
    }
    CAPTURE(lambda);
    CHECK(decreasing);
    CHECK(negative);
    CHECK(inside);
    CHECK(conservation <= 1e-8);
    CHECK(integration <= 1e-10);
  }
}

TEST_CASE("reflection symmetry at lambda = 1") {
  const auto red = solve_reduced(1.0);
  const std::size_t n = red.mesh.size();
  double sup = 0;
  for (std::size_t i = 0; i < n; ++i) sup = std::max(sup, std::abs(red.phi1[i] + red.phi1[n - 1 - i] - kPi / 2));
  CHECK(sup <= 1e-10);
}

TEST_CASE("tail decay rates") {
  for (double lambda : {1.0, 1.5, 2.0, 4.0}) {
    const auto red = solve_reduced(lambda);
    double right_lo = INFINITY;
    double right_hi = 0;
    double left_lo = INFINITY;
    double left_hi = 0;
    for (std::size_t i = 0; i < red.mesh.size(); ++i) {
      const double x = red.mesh[i];
      if (x >= 5) {
        const double a = red.phi1[i] / std::exp(-x);
        right_lo = std::min(right_lo, a);
        right_hi = std::max(right_hi, a);
      } else if (x <= -5) {
        const double b = (kPi / 2 - red.phi1[i]) / std::exp(x / lambda);
        left_lo = std::min(left_lo, b);
        left_hi = std::max(left_hi, b);
      }
    }
    CAPTURE(lambda);
    CHECK(right_hi / right_lo - 1 <= 0.01);
    CHECK(left_hi / left_lo - 1 <= 0.01);
  }
  // lambda = 1 amplitude from the closed form arctan(e^{-x}) ~ e^{-x}.
  const auto red = solve_reduced(1.0);
  CHECK(red.phi1.back() / std::exp(-red.mesh.back()) == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("coarse reduced mesh is rejected") {
  CHECK_THROWS_AS(solve_reduced(1.0, 12.0, 7), MeshTooCoarse);
  CHECK_THROWS_AS(solve_reduced(1.0, 12.0, 4), InvalidArgument);
  CHECK_THROWS_AS(solve_reduced(0.5, 12.0, 101), InvalidArgument);
}

TEST_CASE("singular lift") {
  const auto red = solve_reduced(1.0);
  const auto lift = singular_lift(red);
  const std::size_t mid = red.mesh.size() / 2;
  CHECK(lift.eps == 0.0);
  CHECK(lift.w1[mid] == Approx(0.375).epsilon(1e-12));
  for (std::size_t i = 0; i < red.mesh.size(); ++i) {
    REQUIRE(lift.w2[i] == 0.0);
    REQUIRE(lift.phi1[i] == red.phi1[i]);
    REQUIRE(lift.phi2[i] == red.phi2[i]);
    REQUIRE(lift.w1[i] == critical_manifold_point(red.phi1[i], red.phi2[i], 1.0).w1);
  }
  // Equilibrium node.
  ReducedSolution eq{Mesh::uniform(1, 3), {kPi / 2, kPi / 2, kPi / 2}, {0, 0, 0}, 2.0};
  const auto eq_lift = singular_lift(eq);
  CHECK(eq_lift.w1[1] == Approx(0.0).scale(1));
  CHECK(eq_lift.phi1[1] == kPi / 2);
}

TEST_CASE("composite guess") {
  const auto red = solve_reduced(1.0);
  const auto guess = composite_guess(red, ModelParams::from_eps(1.0, 0.2));
  const std::size_t mid = red.mesh.size() / 2;
  CHECK(guess.u[mid] == Approx(0.6965001794687493).epsilon(1e-12));
  CHECK(guess.v[mid] == Approx(0.6965001794687493).epsilon(1e-12));
  CHECK(guess.u.front() == 0.0);
  CHECK(guess.v.front() == 1.0);
  CHECK(guess.u.back() == 1.0);
  CHECK(guess.v.back() == 0.0);
  CHECK(guess.mesh == red.mesh);
  // Vanishing eps puts the guess on the unit circle.
  const auto tiny = composite_guess(red, ModelParams::from_eps(1.0, 1e-9));
  for (std::size_t i = 0; i < tiny.u.size(); ++i) {
    REQUIRE(std::hypot(tiny.u[i], tiny.v[i]) == Approx(1.0).epsilon(1e-15));
  }
  CHECK_THROWS_AS(composite_guess(red, ModelParams::from_eps(2.0, 0.2)), InvalidArgument);
  CHECK_THROWS_AS(composite_guess(red, ModelParams::from_eps(1.0, 3.0)), DegenerateRadius);
}

TEST_CASE("energy integral") {
  CHECK(reduced_energy_integral(1.0) == Approx(2.0).epsilon(1e-15));
  CHECK(reduced_energy_integral(2.0) == 28.0 / 9.0);
  CHECK(reduced_energy_integral(1.0 + 1e-12) == Approx(2.0).epsilon(1e-11));
  CHECK(sigma_ratio_limit(1.0) == Approx(0.5));
  CHECK(sigma_ratio_limit(2.0) == Approx(7.0 / 9.0));
  for (double lambda : {1.0, 1.5, 2.0, 4.0}) {
    CAPTURE(lambda);
    CHECK(std::abs(reduced_energy_quadrature(solve_reduced(lambda)) - reduced_energy_integral(lambda)) <= 1e-8);
    // Unsimplified (1 - l^3)/(1 - l^2) away from the removable point.
    if (lambda != 1.0) {
      const double raw = 4.0 / 3.0 * (1 - std::pow(lambda, 3)) / (1 - lambda * lambda);
      CHECK(reduced_energy_integral(lambda) == Approx(raw).epsilon(1e-14));
    }
  }
}
