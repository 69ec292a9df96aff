#include <doctest.h>

#include <cmath>

#include "efimov/quadrature.hpp"
#include "efimov/threshold.hpp"

using namespace efimov;

namespace {
double w1(const TorusPoint& u, const TorusPoint& v) {
  const LatticeOrder one(1, true);
  return pair_energy(one, u, v);
}
}  // namespace

TEST_CASE("dispersion_unit is the m = 1 dispersion") {
  const std::array<double, 3> v{0.3, -2.0, 1e-9};
  CHECK(dispersion_unit(v) == doctest::Approx(dispersion(LatticeOrder(1, true), TorusPoint(0.3, -2.0, 1e-9))));
  CHECK(dispersion_unit({1e-10, 0, 0}) == doctest::Approx(5e-21).epsilon(1e-12));
}

TEST_CASE("difference against Watson and a smooth grid sum") {
  // D(u, z) = int 1/W(0,v) - int 1/(W(u,v) - z) for Phi = 1; the first term
  // is 4 pi^3 W, the second is smooth for z < 0 and converges geometrically.
  const ThresholdIntegrator integ(CosineSeries::constant(1.0));
  const TorusPoint u(0.3, 0.2, -0.1);
  const double z = -0.5;
  const TorusGrid g(64, kPi / 64);
  const double smooth = integrate(g, [&](const TorusPoint& v) { return 1.0 / (w1(u, v) - z); });
  const double expect = 4 * std::pow(kPi, 3) * 0.505462019717326 - smooth;
  CHECK(integ.difference(u, z) == doctest::Approx(expect).epsilon(2e-6));
}

TEST_CASE("square-root behaviour at threshold") {
  const ThresholdIntegrator integ(CosineSeries::constant(1.0));
  for (double z : {-1e-4, -1e-6}) {
    const double d = integ.difference(TorusPoint(0, 0, 0), z);
    CHECK(d / (2 * kPi * kPi * std::sqrt(-z)) == doctest::Approx(1.0).epsilon(2e-2));
  }
  CHECK(integ.difference(TorusPoint(0, 0, 0), 0.0) == 0.0);
  CHECK_THROWS(integ.difference(TorusPoint(0, 0, 0), 0.1));
  CHECK(integ.phi_at_origin() == 1.0);
}

TEST_CASE("difference is even in u") {
  const ThresholdIntegrator integ(CosineSeries({{{0, 0, 0}, 0.75}, {{1, 0, 0}, 0.5}}));
  const TorusPoint u(0.01, -0.02, 0.015);
  CHECK(integ.difference(u, -1e-4) == doctest::Approx(integ.difference(-u, -1e-4)).epsilon(1e-10));
}
