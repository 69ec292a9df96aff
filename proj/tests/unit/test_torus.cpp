#include <doctest.h>

#include <cmath>
#include <random>

#include "efimov/torus.hpp"

using namespace efimov;

TEST_CASE("wrap_angle keeps in-range values and folds the rest") {
  CHECK(wrap_angle(1.25) == 1.25);
  CHECK(wrap_angle(kPi) == kPi);
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
}

TEST_CASE("dispersion and pair energy") {
  const LatticeOrder m3(3);
  CHECK(dispersion(m3, TorusPoint(0, 0, 0)) == 0.0);
  CHECK(dispersion(m3, TorusPoint(kPi / 3, 0, 0)) == doctest::Approx(2.0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int t = 0; t < 50; ++t) {
    const TorusPoint p(u(rng), u(rng), u(rng)), q(u(rng), u(rng), u(rng));
    const double w = pair_energy(m3, p, q);
    CHECK(w == doctest::Approx(pair_energy(m3, q, p)));
    CHECK(w >= 0.0);
    CHECK(w == doctest::Approx(dispersion(m3, p) + dispersion(m3, q) + dispersion(m3, p + q)));
    // invariant under shifts by 2pi/m in each argument
    const TorusPoint s(2 * kPi / 3, -2 * kPi / 3, 0);
    CHECK(pair_energy(m3, p + s, q) == doctest::Approx(w).epsilon(1e-12));
  }
}

TEST_CASE("lattice order below 3 needs an explicit opt-in") {
  CHECK_THROWS(LatticeOrder(2));
  CHECK(LatticeOrder(1, true).n1_regime());
}

TEST_CASE("cosine series are even and canonical") {
  const CosineSeries s({{{-1, 0, 2}, 0.5}, {{1, 0, -2}, 0.25}});
  REQUIRE(s.terms().size() == 1);
  CHECK(s.terms()[0].c == doctest::Approx(0.75));
  const TorusPoint q(0.3, -1.1, 0.7);
  CHECK(s(q) == doctest::Approx(s(-q)));
  CHECK(s(q) == doctest::Approx(0.75 * std::cos(0.3) * std::cos(1.4)));
}

TEST_CASE("folding keeps the multiples of m") {
  const CosineSeries s({{{3, 0, 0}, 2.0}, {{1, 0, 0}, 5.0}, {{0, 0, 0}, 1.0}});
  const CosineSeries f = folded(s, 3);
  const TorusPoint v(0.4, 0.1, -0.2);
  CHECK(f(v) == doctest::Approx(1.0 + 2.0 * std::cos(0.4)));
  // direct average over the m^3 preimages
  double avg = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        avg += s(TorusPoint((0.4 + kTwoPi * a) / 3, (0.1 + kTwoPi * b) / 3, (-0.2 + kTwoPi * c) / 3));
  CHECK(f(v) == doctest::Approx(avg / 27));
}

TEST_CASE("presets vanish where documented") {
  CHECK(presets::constant_one()(TorusPoint(1, 2, 3)) == 1.0);
  CHECK(std::abs(presets::half_plus_cos1()(TorusPoint(2 * kPi / 3, 0.5, 0))) < 1e-15);
  CHECK(std::abs(presets::half_plus_cos12()(TorusPoint(0, -2 * kPi / 3, 0))) < 1e-15);
}

TEST_CASE("census of minima") {
  const LatticeOrder m3(3);
  const auto one = enumerate_minima(m3, presets::constant_one());
  CHECK(one.points_per_torus() == 27);
  CHECK(one.n_pairs == 729);
  CHECK(one.n_resonant == 27);
  CHECK(one.points.front() == TorusPoint(0, 0, 0));
  CHECK(enumerate_minima(m3, presets::half_plus_cos1()).n_resonant == 9);
  CHECK(enumerate_minima(m3, presets::half_plus_cos12()).n_resonant == 3);
  for (const auto& pr : one.all_pairs())
    CHECK(pair_energy(m3, pr.p, pr.q) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(enumerate_minima(LatticeOrder(5), presets::constant_one()).points_per_torus() == 125);
}

TEST_CASE("maximum of the pair energy is 27/2") {
  // 3 - cos a - cos b - cos(a + b) peaks at a = b = 2pi/3 with value 9/2
  CHECK(max_pair_energy(LatticeOrder(3)) == doctest::Approx(13.5).epsilon(1e-9));
  CHECK(max_pair_energy(LatticeOrder(4)) == doctest::Approx(13.5).epsilon(1e-9));
}
