#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "efimov/bs.hpp"

using namespace efimov;

namespace {
const LatticeOrder m3(3);

Eigen::VectorXd sorted_eigs(const Eigen::MatrixXd& a) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues();
}

ModelParams near_critical(const CosineSeries& phi, double factor) {
  const std::vector<int> ns{16, 24, 32, 48};
  return make_params(m3, phi, factor * mu0(m3, phi, ns).value);
}
}  // namespace

TEST_CASE("parallel assembly equals the serial reference") {
  const auto params = near_critical(presets::half_plus_cos1(), 1.0);
  const TorusGrid g = standard_grid(8, m3);
  const auto a = assemble_bs(params, g, -0.1);
  const auto b = assemble_bs_serial(params, g, -0.1);
  CHECK((a.a - b.a).cwiseAbs().maxCoeff() <= 1e-15 * b.a.cwiseAbs().maxCoeff());
  CHECK(symmetry_defect(a.a) == 0.0);
  CHECK(a.delta == b.delta);
}

TEST_CASE("counts do not depend on node order") {
  const auto params = near_critical(presets::constant_one(), 1.2);
  const TorusGrid g = standard_grid(8, m3);
  std::vector<std::size_t> perm(g.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937(5));
  const auto a = assemble_bs(params, g, -0.05);
  const auto b = assemble_bs(params, g, -0.05, perm);
  CHECK(count_above(a.a, 1.0) == count_above(b.a, 1.0));
  CHECK((sorted_eigs(a.a) - sorted_eigs(b.a)).cwiseAbs().maxCoeff() < 1e-12);
  std::vector<std::size_t> bad(g.size(), 0);
  CHECK_THROWS(assemble_bs(params, g, -0.05, bad));
}

TEST_CASE("coset reduction keeps the spectrum above zero") {
  for (auto phi : {presets::constant_one(), presets::half_plus_cos1()}) {
    const auto params = near_critical(phi, 1.1);
    for (int n : {6, 12}) {
      const TorusGrid g = standard_grid(n, m3);
      for (double z : {-0.3, -0.05}) {
        const auto full = assemble_bs(params, g, z);
        const auto red = assemble_bs_reduced(params, g, z);
        CHECK(red.size() * 27 == full.size());
        CHECK(count_above(red.a, 1.0) == count_above(full.a, 1.0));
        const auto ef = sorted_eigs(full.a);
        const auto er = sorted_eigs(red.a);
        // largest eigenvalues coincide
        for (int k = 1; k <= 3; ++k)
          CHECK(er[er.size() - k] == doctest::Approx(ef[ef.size() - k]).epsilon(1e-10));
      }
    }
  }
  CHECK_THROWS(assemble_bs_reduced(near_critical(presets::constant_one(), 1.0), standard_grid(8, m3), -0.1));
}

TEST_CASE("input validation") {
  const auto params = near_critical(presets::constant_one(), 1.0);
  CHECK_THROWS_WITH(assemble_bs(params, standard_grid(6, m3), 0.0), "z must be negative");
  const auto strong = near_critical(presets::constant_one(), 3.0);
  CHECK_THROWS_WITH(assemble_bs(strong, standard_grid(6, m3), -1e-3),
                    doctest::Contains("z not below two-particle branch"));
}

TEST_CASE("counts grow as z approaches the threshold") {
  const auto params = near_critical(presets::constant_one(), 1.3);
  const TorusGrid g = standard_grid(12, m3);
  std::size_t prev = 0;
  for (double z : {-1.0, -0.3, -0.1, -0.03}) {
    const auto c = bs_count(params, g, z);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("admissible grid sizes") {
  CHECK(admissible_n(10, 3) == 12);
  CHECK(admissible_n(12, 3) == 12);
  CHECK(admissible_n(1, 3) == 6);
  CHECK(admissible_n(7, 4) == 8);
  CHECK(admissible_n(11, 5) == 20);
  for (int n : {6, 12, 18, 24}) CHECK(standard_grid(admissible_n(n, 3), m3).avoids_minima().value());
  GridPolicy p;
  CHECK(policy_n(p, -0.01, 3) == 30);
  CHECK(policy_n(p, -1.0, 3) == 6);
  p.adaptive = false;
  CHECK(policy_n(p, -1e-6, 3) == 20);
}

TEST_CASE("slope fit") {
  CountCurve c;
  for (int k = 1; k <= 6; ++k) {
    CountPoint pt;
    pt.z = -std::exp(-k);
    pt.count = static_cast<std::size_t>(2 * k + 1);
    c.points.push_back(pt);
  }
  const auto f = slope_fit(c, -1.0, -1e-3);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.used == 6);
  CHECK(c.nonincreasing_as_z_decreases());
  CHECK_THROWS(slope_fit(c, -0.01, -1e-3));
  for (auto& p : c.points) p.saturated = true;
  CHECK_THROWS_WITH(slope_fit(c, -1.0, -1e-3), "window unresolvable at this grid");
}
