#pragma once

// Counting eigenvalues of a dense symmetric matrix above a shift, either
// from the inertia of a Bunch-Kaufman factorization of A - lambda I or from
// a full symmetric eigendecomposition.

#include <Eigen/Dense>
#include <cstddef>

namespace efimov {

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};

/// Inertia of a symmetric matrix via LAPACK dsytrf (1x1 and 2x2 pivots).
Inertia inertia(const Eigen::MatrixXd& a);

enum class CountMethod {
  kAuto,     // both routes up to kDualRouteLimit, inertia alone above it
  kInertia,
  kEigen,
  kBoth,     // both routes; disagreement is an error
};

inline constexpr std::size_t kDualRouteLimit = 4096;
inline constexpr double kCountUnstableBand = 1e-10;

/// Number of eigenvalues of the symmetric matrix `a` strictly greater than
/// `lambda`. Emits the warning "count unstable at this lambda" when an
/// eigenvalue lies within 1e-10 of lambda.
std::size_t count_above(const Eigen::MatrixXd& a, double lambda,
                        CountMethod method = CountMethod::kAuto);

/// Largest entrywise asymmetry |a_ij - a_ji| relative to max |a_ij|.
double symmetry_defect(const Eigen::MatrixXd& a);

}  // namespace efimov
