#include <doctest.h>

#include <cmath>

#include "efimov/bs.hpp"
#include "efimov/limit_kernel.hpp"

using namespace efimov;

TEST_CASE("gamma0 solves the transcendental equation") {
  const auto g = solve_gamma0();
  CHECK(g.gamma0 == doctest::Approx(1.0062378251).epsilon(1e-9));
  CHECK(g.sign_changes == 1);
  const double x = g.gamma0;
  const double direct = std::sqrt(3.0) * x * std::cosh(kPi * x / 2) - 8 * std::sinh(kPi * x / 6);
  CHECK(std::abs(direct) < 1e-12);
  CHECK(gamma_equation(0.5) * gamma_equation(2.0) < 0.0);
}

TEST_CASE("s-wave symbol crosses one at gamma0 with n = 2") {
  HomogeneousKernelSpec spec{kernel_prefactor(2.0)};
  const double g0 = solve_gamma0().gamma0;
  CHECK(swave_symbol(spec, g0) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(swave_symbol(spec, 0.5) > 1.0);
  CHECK(swave_symbol(spec, 2.0) < 1.0);
}

TEST_CASE("channel kernel matches the closed s-wave form") {
  // int_{-1}^{1} du / (x^2 + x y u + y^2) = log((x^2+xy+y^2)/(x^2-xy+y^2)) / (x y)
  HomogeneousKernelSpec spec{0.3};
  const double x = 1.7, y = 0.4;
  const double closed = 2 * kPi * 0.3 / std::sqrt(x * y) *
                        std::log((x * x + x * y + y * y) / (x * x - x * y + y * y)) / (x * y);
  CHECK(channel_kernel(spec, 0, x, y) == doctest::Approx(closed).epsilon(1e-12));
  CHECK(channel_kernel(spec, 2, x, y) == doctest::Approx(channel_kernel(spec, 2, y, x)));
}

TEST_CASE("channel matrices are symmetric and counts grow with r") {
  HomogeneousKernelSpec spec{kernel_prefactor(27.0), 10.0, 4, 120};
  CHECK(symmetry_defect(channel_matrix(spec, 1)) < 1e-14);
  std::size_t prev = 0;
  for (double r : {10.0, 100.0, 1000.0}) {
    spec.r = r;
    const auto t = total_count(spec);
    CHECK(t.total >= prev);
    prev = t.total;
  }
  CHECK(prev > 0);
}

TEST_CASE("localized operator is a direct sum of ball blocks") {
  const LatticeOrder m3(3);
  const std::vector<int> ns{16, 24, 32, 48};
  const auto phi = presets::half_plus_cos12();
  const auto params = make_params(m3, phi, 1.2 * mu0(m3, phi, ns).value);
  const TorusGrid g = standard_grid(12, m3);
  const LocalizedKernelSpec spec{0.6, -0.05};
  const auto all = localized_bs(params, g, spec);
  std::size_t sum = 0;
  for (std::size_t b = 0; b < params.minima.n_resonant; ++b)
    sum += count_above(localized_bs(params, g, spec, static_cast<int>(b)).a, 1.0);
  CHECK(count_above(all.a, 1.0) == sum);
  CHECK(hs_error(params, g, spec) > 0.0);
  CHECK_THROWS(localized_bs(params, g, {2.0, -0.05}));
}
