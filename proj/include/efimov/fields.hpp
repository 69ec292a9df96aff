#pragma once

// Per-grid tables shared by the Fredholm determinant, the Birman-Schwinger
// assembly and the direct discretization: phi at the nodes and per-axis
// cosine tables from which w(node_i, node_j) is summed without further
// trigonometric calls.

#include <cstddef>
#include <vector>

#include "efimov/quadrature.hpp"
#include "efimov/torus.hpp"

namespace efimov {

class GridFields {
 public:
  GridFields(const LatticeOrder& m, const CosineSeries& phi, const TorusGrid& grid);

  const TorusGrid& grid() const { return grid_; }
  std::size_t size() const { return phi_.size(); }
  double weight() const { return grid_.weight(); }

  double phi(std::size_t i) const { return phi_[i]; }
  double phi2(std::size_t i) const { return phi_[i] * phi_[i]; }
  double eps(std::size_t i) const { return eps_[i]; }
  const std::vector<double>& phi_values() const { return phi_; }

  /// w(node_i, node_j).
  double w(std::size_t i, std::size_t j) const {
    const auto& a = idx_[i];
    const auto& b = idx_[j];
    const std::size_t n = static_cast<std::size_t>(grid_.n());
    return eps_[i] + eps_[j] + (e2_[a[0] * n + b[0]] + e2_[a[1] * n + b[1]] + e2_[a[2] * n + b[2]]);
  }

 private:
  TorusGrid grid_;
  std::vector<double> phi_;
  std::vector<double> eps_;
  std::vector<double> e2_;   // 1 - cos(m (x_a + x_b)) per axis pair
  std::vector<std::array<std::size_t, 3>> idx_;
};

}  // namespace efimov
