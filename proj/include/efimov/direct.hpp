#pragma once

// Direct discretization of H_mu = H0 - mu V1 - mu V2 on pairs of grid nodes,
// used as an independent oracle for the Birman-Schwinger counts.

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "efimov/fields.hpp"
#include "efimov/friedrichs.hpp"

namespace efimov {

/// Functions on node pairs, stored f[i * G + j] = f(p_i, q_j).
class DiscreteHamiltonian {
 public:
  DiscreteHamiltonian(const ModelParams& params, const TorusGrid& grid);

  std::size_t nodes() const { return fields_.size(); }
  std::size_t dim() const { return nodes() * nodes(); }
  std::size_t symmetric_dim() const { return nodes() * (nodes() + 1) / 2; }
  const GridFields& fields() const { return fields_; }
  double mu() const { return mu_; }

  /// H f, rows of the pair index in parallel.
  std::vector<double> apply(std::span<const double> f) const;
  /// Single-threaded reference of apply.
  std::vector<double> apply_serial(std::span<const double> f) const;

  /// Weighted inner product sum_ij w^2 f_ij g_ij (w the node weight).
  double inner(std::span<const double> f, std::span<const double> g) const;

  /// Full dim x dim matrix; only for G <= 64.
  Eigen::MatrixXd dense() const;
  /// Matrix of H restricted to symmetric functions in the orthonormal basis
  /// e_ii, (e_ij + e_ji)/sqrt 2 (i < j); only for G <= 256.
  Eigen::MatrixXd dense_symmetric() const;

 private:
  double mu_;
  GridFields fields_;
};

inline constexpr std::size_t kDenseFullLimit = 64;
inline constexpr std::size_t kDenseSymmetricLimit = 256;

/// Ascending eigenvalues of a dense symmetric matrix (LAPACK dsyev).
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a);

/// Eigenvalues of H on the symmetric subspace.
std::vector<double> symmetric_spectrum(const ModelParams& params, const TorusGrid& grid);

/// Number of eigenvalues strictly below z; warns "count unstable at this z"
/// when one lies within 1e-9 of z.
std::size_t count_below(std::span<const double> spectrum, double z);

std::size_t dense_count_below(const ModelParams& params, const TorusGrid& grid, double z);

struct CrossCheckRow {
  double z = 0.0;
  std::size_t direct = 0;
  std::size_t bs = 0;
  bool equal() const { return direct == bs; }
};

struct CrossCheckReport {
  double mu = 0.0;
  int grid_n = 0;
  std::vector<CrossCheckRow> rows;
  bool all_equal() const;
};

CrossCheckReport cross_check(const ModelParams& params, const TorusGrid& grid,
                             std::span<const double> z_list);

}  // namespace efimov
