#include "efimov/quadrature.hpp"

#include <Eigen/Dense>
#include <sstream>

namespace efimov {

TorusGrid::TorusGrid(int n, double shift) : n_(n), shift_(shift) {
  if (n < 2) throw std::invalid_argument("grid needs at least 2 nodes per axis");
  if (!(shift >= 0.0 && shift < kTwoPi / n))
    throw std::invalid_argument("grid shift must lie in [0, 2pi/N)");
  const double h = kTwoPi / n;
  weight_ = h * h * h;
  axis_.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) axis_[static_cast<std::size_t>(j)] = -kPi + j * h + shift;
}

TorusPoint TorusGrid::node(std::size_t idx) const {
  const auto ij = node_indices(idx);
  return {axis_[ij[0]], axis_[ij[1]], axis_[ij[2]]};
}

std::array<int, 3> TorusGrid::node_indices(std::size_t idx) const {
  const auto n = static_cast<std::size_t>(n_);
  return {static_cast<int>(idx / (n * n)), static_cast<int>((idx / n) % n),
          static_cast<int>(idx % n)};
}

void TorusGrid::check_avoidance(int m) {
  bool ok = true;
  for (double x : axis_) {
    for (int k = 0; k < m; ++k) {
      const double a = wrap_angle(kTwoPi * k / m);
      double d = std::abs(wrap_angle(x - a));
      if (d < 1e-12) ok = false;
    }
  }
  avoids_ = ok;
  checked_m_ = m;
}

std::string TorusGrid::describe() const {
  std::ostringstream os;
  os << "N=" << n_ << " shift=" << shift_;
  return os.str();
}

TorusGrid build_grid(int n, double shift, const MinimaSet& minima) {
  TorusGrid g(n, shift);
  g.check_avoidance(minima.m);
  return g;
}

TorusGrid build_grid(int n, double shift, const LatticeOrder& m) {
  TorusGrid g(n, shift);
  g.check_avoidance(m.value());
  return g;
}

TorusGrid standard_grid(int n, const LatticeOrder& m) { return build_grid(n, kPi / n, m); }

void throw_nonfinite_node(const TorusPoint& p, double value) {
  std::ostringstream os;
  os << "integrand is not finite (" << value << ") at node " << p.str();
  throw std::domain_error(os.str());
}

double RichardsonResult::last_stage_change() const {
  if (stages.size() < 2) return 0.0;
  const double a = stages[stages.size() - 1], b = stages[stages.size() - 2];
  return std::abs(a - b) / std::abs(a);
}

RichardsonResult richardson_extrapolate(std::span<const int> ns, std::span<const double> sums) {
  if (ns.size() != sums.size()) throw std::invalid_argument("ns and sums differ in length");
  if (ns.size() < 2) throw std::invalid_argument("Richardson extrapolation needs >= 2 grids");
  for (std::size_t i = 1; i < ns.size(); ++i)
    if (ns[i] <= ns[i - 1]) throw std::invalid_argument("grid sizes must increase strictly");

  RichardsonResult out;
  out.ns.assign(ns.begin(), ns.end());
  out.raw.assign(sums.begin(), sums.end());
  for (std::size_t k = 2; k <= ns.size(); ++k) {
    // Fit I + sum_{e in 1,3,5,...} a_e h^e through the first k sums.
    Eigen::MatrixXd a(k, k);
    Eigen::VectorXd b(k);
    for (std::size_t i = 0; i < k; ++i) {
      const double h = 1.0 / ns[i];
      a(i, 0) = 1.0;
      for (std::size_t j = 1; j < k; ++j) a(i, j) = std::pow(h, 2.0 * j - 1.0);
      b(i) = sums[i];
    }
    out.stages.push_back(a.colPivHouseholderQr().solve(b)(0));
  }
  out.value = out.stages.back();
  for (std::size_t i = 2; i < out.stages.size(); ++i)
    if (std::abs(out.stages[i] - out.stages[i - 1]) >
        std::abs(out.stages[i - 1] - out.stages[i - 2]))
      out.converging = false;
  return out;
}

}  // namespace efimov
