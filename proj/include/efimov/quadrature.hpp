#pragma once

// Shifted uniform product quadrature on the torus and Richardson
// extrapolation for integrands with an integrable |q|^-2 singularity.
//
// `integrate` is the OpenMP kernel; `integrate_serial` is the plain
// single-accumulator reference kept for tests and the benchmark.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "efimov/torus.hpp"

namespace efimov {

class TorusGrid {
 public:
  /// Nodes -pi + j * 2pi/N + shift on each axis, weight (2pi/N)^3.
  TorusGrid(int n, double shift);

  int n() const { return n_; }
  double shift() const { return shift_; }
  double spacing() const { return kTwoPi / n_; }
  double weight() const { return weight_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }

  double axis_node(int j) const { return axis_[static_cast<std::size_t>(j)]; }
  const std::vector<double>& axis() const { return axis_; }
  /// Flat index (j1 * N + j2) * N + j3.
  TorusPoint node(std::size_t idx) const;
  std::array<int, 3> node_indices(std::size_t idx) const;

  /// Whether no node coincides with a point whose coordinates are multiples
  /// of 2pi/m. Empty until checked against a lattice order.
  std::optional<bool> avoids_minima() const { return avoids_; }
  int checked_order() const { return checked_m_; }
  void check_avoidance(int m);

  std::string describe() const;

 private:
  int n_;
  double shift_;
  double weight_;
  std::vector<double> axis_;
  std::optional<bool> avoids_;
  int checked_m_ = 0;
};

/// Grid with node-avoidance recorded against the minima's lattice order.
TorusGrid build_grid(int n, double shift, const MinimaSet& minima);
TorusGrid build_grid(int n, double shift, const LatticeOrder& m);
/// Grid with the default half-cell shift pi/N.
TorusGrid standard_grid(int n, const LatticeOrder& m);

[[noreturn]] void throw_nonfinite_node(const TorusPoint& p, double value);

template <class F>
double integrate_serial(const TorusGrid& grid, F&& f) {
  double sum = 0.0;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const TorusPoint p = grid.node(idx);
    const double v = f(p);
    if (!std::isfinite(v)) throw_nonfinite_node(p, v);
    sum += v;
  }
  return sum * grid.weight();
}

/// Sum of weight * f(i, j, k) over node indices. Each axis-1 slab is reduced
/// in fixed index order and the slab sums are combined serially, so the
/// result does not depend on the number of threads.
template <class F>
double integrate_indexed(const TorusGrid& grid, F&& f) {
  const int n = grid.n();
  std::vector<double> slab(static_cast<std::size_t>(n), 0.0);
  int bad_slab = -1;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    bool ok = true;
    for (int j = 0; j < n && ok; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = f(i, j, k);
        if (!std::isfinite(v)) {
          ok = false;
          break;
        }
        s += v;
      }
    slab[static_cast<std::size_t>(i)] = s;
    if (!ok) {
#pragma omp critical(efimov_integrate_error)
      if (bad_slab < 0 || i < bad_slab) bad_slab = i;
    }
  }
  if (bad_slab >= 0) {
    // Re-scan the offending slab serially to name the node.
    const auto& ax = grid.axis();
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = f(bad_slab, j, k);
        if (!std::isfinite(v)) throw_nonfinite_node(TorusPoint(ax[bad_slab], ax[j], ax[k]), v);
      }
  }
  double sum = 0.0;
  for (double s : slab) sum += s;
  return sum * grid.weight();
}

/// Sum of weight * f(node) over the nodes, reduced as in integrate_indexed.
template <class F>
double integrate(const TorusGrid& grid, F&& f) {
  const auto& ax = grid.axis();
  return integrate_indexed(grid, [&](int i, int j, int k) {
    return f(TorusPoint(ax[i], ax[j], ax[k]));
  });
}

struct RichardsonResult {
  double value = 0.0;
  std::vector<int> ns;
  std::vector<double> raw;      // the plain grid sums
  std::vector<double> stages;   // extrapolant using the first k+1 sums
  bool converging = true;       // successive stage differences shrink
  double last_stage_change() const;
};

/// Extrapolates sums S(N) ~ I + a1 h + a3 h^3 + a5 h^5 + ... (h = 1/N), the
/// expansion of the shifted rule for a point singularity of type |q|^-2
/// sitting at a fixed position relative to the grid.
RichardsonResult richardson_extrapolate(std::span<const int> ns, std::span<const double> sums);

/// Sums f on standard grids for each N (node avoidance checked against m)
/// and extrapolates. `ns` must be strictly increasing with at least 2 entries.
template <class F>
RichardsonResult richardson_integrate(F&& f, std::span<const int> ns, const LatticeOrder& m) {
  std::vector<double> sums;
  for (int n : ns) {
    const TorusGrid g = standard_grid(n, m);
    if (!g.avoids_minima().value_or(false))
      throw std::invalid_argument("grid N=" + std::to_string(n) + " puts a node on a minimum");
    sums.push_back(integrate(g, f));
  }
  return richardson_extrapolate(ns, sums);
}

}  // namespace efimov
