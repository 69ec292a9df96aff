#include <doctest.h>

#include <random>

#include "efimov/diagnostics.hpp"
#include "efimov/linalg.hpp"

using namespace efimov;

namespace {
Eigen::MatrixXd random_symmetric(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = d(rng);
  return 0.5 * (a + a.transpose());
}
}  // namespace

TEST_CASE("counts on a diagonal matrix") {
  Eigen::MatrixXd a = Eigen::VectorXd::LinSpaced(10, 0.0, 2.25).asDiagonal();
  CHECK(count_above(a, 1.0) == 5);
  CHECK(count_above(a, 1.0, CountMethod::kInertia) == 5);
  CHECK(count_above(a, 1.0, CountMethod::kEigen) == 5);
  const auto in = inertia(a);
  CHECK(in.positive == 9);
  CHECK(in.zero == 1);
}

TEST_CASE("inertia and eigenvalue routes agree") {
  for (unsigned s = 1; s <= 5; ++s) {
    const auto a = random_symmetric(60, s);
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues();
    std::size_t above = 0;
    for (int i = 0; i < ev.size(); ++i) above += ev[i] > 0.7;
    CHECK(count_above(a, 0.7, CountMethod::kBoth) == above);
  }
}

TEST_CASE("eigenvalue on the shift warns") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(3, 3);
  WarningCapture cap;
  CHECK(count_above(a, 1.0) == 0);
  CHECK(cap.contains("count unstable"));
}

TEST_CASE("symmetry defect") {
  auto a = random_symmetric(8, 3);
  CHECK(symmetry_defect(a) == 0.0);
  a(0, 1) += 1.0;
  CHECK(symmetry_defect(a) > 0.0);
}
