#include <doctest.h>

#include <cmath>
#include <random>

#include "efimov/bs.hpp"
#include "efimov/direct.hpp"

using namespace efimov;

namespace {
const LatticeOrder m3(3);
}

TEST_CASE("apply equals the serial reference and is self-adjoint") {
  const auto params = make_params(m3, presets::half_plus_cos1(), 0.02);
  const DiscreteHamiltonian h(params, standard_grid(6, m3));
  std::mt19937 rng(3);
  std::normal_distribution<double> d;
  std::vector<double> f(h.dim()), g(h.dim());
  for (auto& x : f) x = d(rng);
  for (auto& x : g) x = d(rng);
  const auto hf = h.apply(f);
  const auto hs = h.apply_serial(f);
  for (std::size_t i = 0; i < hf.size(); ++i) CHECK(hf[i] == doctest::Approx(hs[i]).epsilon(1e-13));
  const auto hg = h.apply(g);
  CHECK(h.inner(hf, g) == doctest::Approx(h.inner(f, hg)).epsilon(1e-12));
}

TEST_CASE("symmetric block is part of the full spectrum") {
  const auto params = make_params(m3, presets::constant_one(), 0.02);
  const TorusGrid g = standard_grid(4, m3);
  const DiscreteHamiltonian h(params, g);
  const auto full = symmetric_eigenvalues(h.dense());
  const auto sym = symmetric_eigenvalues(h.dense_symmetric());
  CHECK(sym.size() == h.symmetric_dim());
  for (double e : {sym.front(), sym[sym.size() / 2], sym.back()}) {
    double best = 1e300;
    for (double f : full) best = std::min(best, std::abs(f - e));
    CHECK(best < 1e-10);
  }
  CHECK_THROWS(DiscreteHamiltonian(params, standard_grid(6, m3)).dense());
}

TEST_CASE("free Hamiltonian spectrum is the pair energy") {
  const auto params = make_params(m3, presets::constant_one(), 1e-300);
  const TorusGrid g = standard_grid(4, m3);
  const auto spec = symmetric_spectrum(params, g);
  const GridFields f(m3, presets::constant_one(), g);
  double lo = 1e300;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j) lo = std::min(lo, f.w(i, j));
  CHECK(spec.front() == doctest::Approx(lo).epsilon(1e-12));
}

TEST_CASE("direct and Birman-Schwinger counts coincide") {
  const std::vector<int> ns{16, 24, 32, 48};
  const double m0 = mu0(m3, presets::constant_one(), ns).value;
  const std::vector<double> zs{-0.5, -0.1, -0.02};
  for (double factor : {0.8, 1.0, 1.2}) {
    const auto params = make_params(m3, presets::constant_one(), factor * m0);
    const auto rep = cross_check(params, standard_grid(4, m3), zs);
    CHECK(rep.rows.size() == 3);
    CHECK(rep.all_equal());
  }
}

TEST_CASE("count_below is strict") {
  const std::vector<double> s{-2.0, -1.0, 0.5};
  CHECK(count_below(s, -1.0 - 1e-3) == 1);
  CHECK(count_below(s, 0.0) == 2);
}
