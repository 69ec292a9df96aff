#include <doctest.h>

#include <cmath>

#include "efimov/gauss.hpp"
#include "efimov/quadrature.hpp"

using namespace efimov;

TEST_CASE("grid layout") {
  const TorusGrid g(6, kPi / 6);
  CHECK(g.size() == 216);
  CHECK(g.weight() == doctest::Approx(std::pow(kTwoPi / 6, 3)));
  CHECK(g.axis_node(0) == doctest::Approx(-kPi + kPi / 6));
  const auto ij = g.node_indices(1 * 36 + 2 * 6 + 3);
  CHECK(ij == std::array<int, 3>{1, 2, 3});
  CHECK(g.node(1 * 36 + 2 * 6 + 3)[2] == doctest::Approx(g.axis_node(3)));
}

TEST_CASE("node avoidance of the minima") {
  CHECK(standard_grid(12, LatticeOrder(3)).avoids_minima().value());
  CHECK_FALSE(build_grid(12, 0.0, LatticeOrder(3)).avoids_minima().value());
  CHECK_FALSE(standard_grid(9, LatticeOrder(3)).avoids_minima().value());
}

TEST_CASE("trigonometric polynomials are integrated exactly") {
  const TorusGrid g = standard_grid(8, LatticeOrder(3));
  auto f = [](const TorusPoint& p) { return 2.0 + std::cos(p[0]) * std::cos(2 * p[1]) + std::cos(3 * p[2]); };
  CHECK(integrate(g, f) == doctest::Approx(2.0 * std::pow(kTwoPi, 3)).epsilon(1e-13));
}

TEST_CASE("parallel and serial sums agree") {
  const TorusGrid g = standard_grid(20, LatticeOrder(3));
  auto f = [](const TorusPoint& p) { return 1.0 / (3.1 - std::cos(p[0]) - std::cos(p[1]) - std::cos(p[2])); };
  CHECK(integrate(g, f) == doctest::Approx(integrate_serial(g, f)).epsilon(1e-13));
  // thread-count independent by construction: two calls are bit-identical
  CHECK(integrate(g, f) == integrate(g, f));
}

TEST_CASE("non-finite integrand names the node") {
  const TorusGrid g(4, 0.0);
  auto f = [](const TorusPoint& p) { return p[0] < 0.0 ? 1.0 : std::nan(""); };
  CHECK_THROWS(integrate(g, f));
  CHECK_THROWS(integrate_serial(g, f));
}

TEST_CASE("Richardson removes odd powers of h") {
  const std::vector<int> ns{16, 24, 32, 48};
  std::vector<double> s;
  for (int n : ns) s.push_back(7.0 + 3.0 / n - 11.0 / std::pow(n, 3) + 5.0 / std::pow(n, 5));
  const auto r = richardson_extrapolate(ns, s);
  CHECK(r.value == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(r.stages.back() == r.value);
  CHECK_THROWS(richardson_extrapolate(std::vector<int>{16, 16}, std::vector<double>{1, 1}));
}

TEST_CASE("Watson integral from the shifted grids") {
  // (2 pi)^-3 int dq / (3 - sum cos q_j) = 0.505462019717326...
  const std::vector<int> ns{16, 24, 32, 48};
  auto f = [](const TorusPoint& p) { return 1.0 / (3.0 - std::cos(p[0]) - std::cos(p[1]) - std::cos(p[2])); };
  const auto r = richardson_integrate(f, ns, LatticeOrder(1, true));
  CHECK(r.value / std::pow(kTwoPi, 3) == doctest::Approx(0.505462019717326).epsilon(1e-5));
}

TEST_CASE("Gauss-Legendre rules") {
  const auto g2 = gauss_legendre(2);
  CHECK(g2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)));
  CHECK(g2.weights[1] == doctest::Approx(1.0));
  const auto g = gauss_legendre(10, 0.0, 2.0);
  double s = 0.0, e = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    s += g.weights[i] * std::pow(g.nodes[i], 19);
    e += g.weights[i] * std::exp(g.nodes[i]);
  }
  CHECK(s == doctest::Approx(std::pow(2.0, 20) / 20).epsilon(1e-12));
  CHECK(e == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-14));
}
