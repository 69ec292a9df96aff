#include "efimov/direct.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "efimov/bs.hpp"
#include "efimov/diagnostics.hpp"

namespace efimov {

DiscreteHamiltonian::DiscreteHamiltonian(const ModelParams& params, const TorusGrid& grid)
    : mu_(params.mu), fields_(params.m, params.phi, grid) {}

std::vector<double> DiscreteHamiltonian::apply(std::span<const double> f) const {
  const std::size_t g = nodes();
  if (f.size() != dim()) throw std::invalid_argument("vector has the wrong length");
  const double wt = fields_.weight();
  // a[j] = sum_k w phi_k f(k, j), b[i] = sum_k w phi_k f(i, k).
  std::vector<double> a(g, 0.0), b(g, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < g; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < g; ++k) s += fields_.phi(k) * f[k * g + j];
    a[j] = wt * s;
  }
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < g; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < g; ++k) s += fields_.phi(k) * f[i * g + k];
    b[i] = wt * s;
  }
  std::vector<double> out(dim());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j)
      out[i * g + j] = fields_.w(i, j) * f[i * g + j] -
                       mu_ * (fields_.phi(i) * a[j] + fields_.phi(j) * b[i]);
  return out;
}

std::vector<double> DiscreteHamiltonian::apply_serial(std::span<const double> f) const {
  const std::size_t g = nodes();
  if (f.size() != dim()) throw std::invalid_argument("vector has the wrong length");
  const double wt = fields_.weight();
  std::vector<double> out(dim());
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      double v1 = 0.0, v2 = 0.0;
      for (std::size_t k = 0; k < g; ++k) {
        v1 += fields_.phi(k) * f[k * g + j];
        v2 += fields_.phi(k) * f[i * g + k];
      }
      out[i * g + j] = fields_.w(i, j) * f[i * g + j] -
                       mu_ * (fields_.phi(i) * wt * v1 + fields_.phi(j) * wt * v2);
    }
  return out;
}

double DiscreteHamiltonian::inner(std::span<const double> f, std::span<const double> g) const {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
  return s * fields_.weight() * fields_.weight();
}

Eigen::MatrixXd DiscreteHamiltonian::dense() const {
  const std::size_t g = nodes();
  if (g > kDenseFullLimit)
    throw std::invalid_argument("dense materialization of the full operator needs G <= 64");
  const double c = mu_ * fields_.weight();
  const auto d = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      const auto r = static_cast<Eigen::Index>(i * g + j);
      h(r, r) += fields_.w(i, j);
      for (std::size_t k = 0; k < g; ++k) {
        h(r, static_cast<Eigen::Index>(k * g + j)) -= c * fields_.phi(i) * fields_.phi(k);
        h(r, static_cast<Eigen::Index>(i * g + k)) -= c * fields_.phi(j) * fields_.phi(k);
      }
    }
  return h;
}

Eigen::MatrixXd DiscreteHamiltonian::dense_symmetric() const {
  const std::size_t g = nodes();
  if (g > kDenseSymmetricLimit)
    throw std::invalid_argument("dense materialization of the symmetric operator needs G <= 256");
  const double c = mu_ * fields_.weight();
  const double r2 = std::sqrt(0.5);
  // Basis b = (i, j), i <= j; its vector is e_ii or (e_ij + e_ji) / sqrt 2.
  std::vector<std::pair<std::size_t, std::size_t>> basis;
  std::vector<std::size_t> index(g * g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j) {
      index[i * g + j] = index[j * g + i] = basis.size();
      basis.emplace_back(i, j);
    }
  const auto d = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  // Column of b = (k, l): H applied to the basis vector, then projected.
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index col = 0; col < d; ++col) {
    const auto [k, l] = basis[static_cast<std::size_t>(col)];
    const double s = (k == l) ? 1.0 : r2;
    auto add = [&](std::size_t i, std::size_t j, double v) {
      // Projection of v e_ij onto the symmetric basis.
      const auto row = static_cast<Eigen::Index>(index[i * g + j]);
      h(row, col) += (i == j) ? v : r2 * v;
    };
    auto column_of = [&](std::size_t a, std::size_t b, double amp) {
      add(a, b, amp * fields_.w(a, b));
      for (std::size_t i = 0; i < g; ++i) add(i, b, -amp * c * fields_.phi(i) * fields_.phi(a));
      for (std::size_t j = 0; j < g; ++j) add(a, j, -amp * c * fields_.phi(j) * fields_.phi(b));
    };
    column_of(k, l, s);
    if (k != l) column_of(l, k, s);
  }
  return h;
}

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  const auto n = static_cast<lapack_int>(a.rows());
  Eigen::MatrixXd work = a;
  std::vector<double> ev(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, ev.data());
  if (info != 0) throw std::runtime_error("dsyev failed with info " + std::to_string(info));
  return ev;
}

std::vector<double> symmetric_spectrum(const ModelParams& params, const TorusGrid& grid) {
  return symmetric_eigenvalues(DiscreteHamiltonian(params, grid).dense_symmetric());
}

std::size_t count_below(std::span<const double> spectrum, double z) {
  std::size_t n = 0;
  bool close = false;
  for (double e : spectrum) {
    if (e < z) ++n;
    if (std::abs(e - z) <= 1e-9) close = true;
  }
  if (close) warn("count unstable at this z");
  return n;
}

std::size_t dense_count_below(const ModelParams& params, const TorusGrid& grid, double z) {
  return count_below(symmetric_spectrum(params, grid), z);
}

bool CrossCheckReport::all_equal() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.equal(); });
}

CrossCheckReport cross_check(const ModelParams& params, const TorusGrid& grid,
                             std::span<const double> z_list) {
  CrossCheckReport out;
  out.mu = params.mu;
  out.grid_n = grid.n();
  const auto spectrum = symmetric_spectrum(params, grid);
  for (double z : z_list) {
    CrossCheckRow row;
    row.z = z;
    row.direct = count_below(spectrum, z);
    row.bs = count_above(assemble_bs(params, grid, z).a, 1.0);
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace efimov
