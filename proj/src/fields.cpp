#include "efimov/fields.hpp"

#include <cmath>

namespace efimov {

GridFields::GridFields(const LatticeOrder& m, const CosineSeries& phi, const TorusGrid& grid)
    : grid_(grid) {
  const std::size_t n = static_cast<std::size_t>(grid.n());
  const double mm = m.value();
  std::vector<double> e1(n);
  for (std::size_t a = 0; a < n; ++a) e1[a] = 1.0 - std::cos(mm * grid.axis()[a]);
  e2_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      e2_[a * n + b] = 1.0 - std::cos(mm * (grid.axis()[a] + grid.axis()[b]));

  const std::size_t g = grid.size();
  phi_.resize(g);
  eps_.resize(g);
  idx_.resize(g);
  for (std::size_t i = 0; i < g; ++i) {
    const auto ij = grid.node_indices(i);
    idx_[i] = {static_cast<std::size_t>(ij[0]), static_cast<std::size_t>(ij[1]),
               static_cast<std::size_t>(ij[2])};
    eps_[i] = e1[idx_[i][0]] + e1[idx_[i][1]] + e1[idx_[i][2]];
    phi_[i] = phi(grid.node(i));
  }
}

}  // namespace efimov
