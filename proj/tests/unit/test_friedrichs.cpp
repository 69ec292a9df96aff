#include <doctest.h>

#include <cmath>
#include <random>

#include "efimov/diagnostics.hpp"
#include "efimov/friedrichs.hpp"
#include "efimov/threshold.hpp"

using namespace efimov;

namespace {
constexpr double kWatson = 0.505462019717326;
const LatticeOrder m3(3);
}  // namespace

TEST_CASE("essential interval closed form against brute force") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int t = 0; t < 20; ++t) {
    const TorusPoint p(u(rng), u(rng), u(rng));
    const auto c = ess_interval_closed_form(m3, p);
    const auto b = ess_interval_bruteforce(m3, p);
    CHECK(c.lower == doctest::Approx(b.lower).epsilon(1e-8));
    CHECK(c.upper == doctest::Approx(b.upper).epsilon(1e-8));
  }
  const auto z = ess_interval(m3, TorusPoint(0, 0, 0));
  CHECK(z.lower == 0.0);
  CHECK(z.upper == doctest::Approx(12.0));
}

TEST_CASE("mu0 for phi = 1 matches the Watson constant") {
  // int 1/epsilon over the torus is (2pi)^3 W for every m
  const std::vector<int> ns{16, 24, 32, 48};
  const auto r = mu0(m3, presets::constant_one(), ns);
  CHECK(r.value == doctest::Approx(2.0 / (std::pow(kTwoPi, 3) * kWatson)).epsilon(1e-6));
  CHECK(r.per_grid.size() == 4);
  CHECK(mu0(LatticeOrder(5), presets::constant_one(), ns).value ==
        doctest::Approx(r.value).epsilon(1e-9));
  CHECK_THROWS(mu0(m3, presets::constant_one(), std::vector<int>{16, 24}));
}

TEST_CASE("matched mu0 makes Delta vanish at the minima") {
  const TorusGrid g = standard_grid(24, m3);
  const auto phi = presets::half_plus_cos1();
  const double mu = mu0_matched(m3, phi, g);
  const FredholmEvaluator ev(m3, phi, mu, g);
  const auto ms = enumerate_minima(m3, phi);
  for (const auto& p : ms.points) CHECK(std::abs(ev.delta(p, 0.0)) < 1e-13);
  CHECK(ev.lambda(TorusPoint(0, 0, 0)) == doctest::Approx(1.0 / mu));
}

TEST_CASE("Delta decreases in z and is positive below criticality") {
  const TorusGrid g = standard_grid(16, m3);
  const auto phi = presets::constant_one();
  const double mu = 0.9 * mu0_matched(m3, phi, g);
  const FredholmEvaluator ev(m3, phi, mu, g);
  const TorusPoint p(0.2, -0.4, 1.0);
  double prev = -1.0;
  for (double z : {-1.0, -0.3, -0.1, -0.01}) {
    const double d = ev.delta(p, z);
    CHECK(d > 0.0);
    if (prev > 0.0) CHECK(d < prev);
    prev = d;
  }
  // rank-one determinant against the explicit resolvent sum
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double f = phi(g.node(i));
    s += f * f / (pair_energy(m3, p, g.node(i)) + 0.3);
  }
  CHECK(ev.delta(p, -0.3) == doctest::Approx(1.0 - mu * s * g.weight()).epsilon(1e-12));
  CHECK_THROWS_WITH(ev.delta(p, ess_interval_closed_form(m3, p).lower + 0.01), doctest::Contains("z inside essential spectrum"));
}

TEST_CASE("node values of Delta match the pointwise evaluator") {
  const TorusGrid g = standard_grid(12, m3);
  const FredholmEvaluator ev(m3, presets::half_plus_cos12(), 0.01, g);
  const auto d = ev.delta_on_nodes(-0.2);
  for (std::size_t i : {0ul, 17ul, 999ul, 1727ul})
    CHECK(d[i] == doctest::Approx(ev.delta(g.node(i), -0.2)).epsilon(1e-12));
}

TEST_CASE("discrete eigenvalue below the essential spectrum") {
  const TorusGrid g = standard_grid(16, m3);
  const auto phi = presets::constant_one();
  const double mc = mu0_matched(m3, phi, g);
  const TorusPoint p(0, 0, 0);
  const auto strong = make_params(m3, phi, 1.5 * mc);
  const auto e = disc_eigenvalue(strong, g, p, -10.0);
  REQUIRE(e.has_value());
  CHECK(*e < 0.0);
  CHECK(std::abs(fredholm_det(strong, g, p, *e)) < 1e-9);
  CHECK_FALSE(disc_eigenvalue(make_params(m3, phi, 0.7 * mc), g, p, -1.0).has_value());
  CHECK_THROWS_WITH(disc_eigenvalue(make_params(m3, phi, 100.0 * mc), g, p, -1e-3),
                    doctest::Contains("floor too high"));
}

TEST_CASE("branch bottom for mu above criticality is negative") {
  const TorusGrid g = standard_grid(12, m3);
  const auto phi = presets::constant_one();
  const auto params = make_params(m3, phi, 1.3 * mu0_matched(m3, phi, g));
  std::vector<TorusPoint> pts{{0, 0, 0}, {1, 1, 1}, {kPi, kPi, kPi}};
  const auto b = two_particle_branch(params, pts, g);
  CHECK(b.tau_ess < 0.0);
  CHECK(b.three_particle.upper == 13.5);
  REQUIRE(b.points[0].eigenvalue.has_value());
  CHECK(b.tau_ess == doctest::Approx(*b.points[0].eigenvalue));
}

TEST_CASE("resonance function") {
  // N/m even keeps the nodes at the same relative offset from every minimum
  std::vector<TorusGrid> gs;
  for (int n : {12, 24, 36, 48}) gs.push_back(standard_grid(n, m3));
  const auto r = resonance_residual(m3, presets::constant_one(), gs);
  CHECK(r.max_residual < 1e-12);
  CHECK(r.g_eigenvalue == doctest::Approx(1.0));
  CHECK(r.l1_converging);
  CHECK(r.l2_diverging);
}

TEST_CASE("continuum Delta at threshold follows the square-root law") {
  const std::vector<int> ns{16, 24, 32, 48};
  const auto phi = presets::constant_one();
  const double m0 = mu0(m3, phi, ns).value;
  const auto params = make_params(m3, phi, m0);
  const ThresholdIntegrator integ(folded(phi * phi, 3));
  const double z = -1e-6;
  const double d = fredholm_det_continuum(params, integ, m0, TorusPoint(0, 0, 0), z);
  // one folded minimum, Phi(0) = 1: Delta ~ 2 pi^2 mu0 sqrt(-z)
  CHECK(d / (2 * kPi * kPi * m0 * std::sqrt(-z)) == doctest::Approx(1.0).epsilon(2e-2));
}

TEST_CASE("decomposition sample bookkeeping") {
  const std::vector<int> ns{16, 24, 32, 48};
  const auto phi = presets::half_plus_cos1();
  const auto params = make_params(m3, phi, mu0(m3, phi, ns).value);
  std::vector<DeltaOffset> offs{{TorusPoint(1e-3, 0, 0), 0.0}, {TorusPoint(2e-3, 0, 0), 0.0},
                                {TorusPoint(0, 0, 0), -1e-6}};
  const auto rep = decomposition_residual(params, 0, offs);
  CHECK(rep.resonant);
  REQUIRE(rep.samples.size() == 3);
  for (const auto& s : rep.samples) CHECK(s.ratio_scaled == doctest::Approx(1.0).epsilon(5e-3));
  std::vector<DeltaOffset> far{{TorusPoint(0.5, 0, 0), 0.0}};
  CHECK_THROWS(decomposition_residual(params, 0, far));
}
