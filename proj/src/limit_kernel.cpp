#include "efimov/limit_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "efimov/diagnostics.hpp"
#include "efimov/gauss.hpp"

namespace efimov {

double gamma_equation(double g) {
  return std::sqrt(3.0) * g * std::cosh(kPi * g / 2.0) - 8.0 * std::sinh(kPi * g / 6.0);
}

GammaSolution solve_gamma0(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  GammaSolution out;
  bool found = false;
  double prev = 0.1, fprev = gamma_equation(prev);
  for (int k = 1; k <= 990; ++k) {
    const double g = 0.1 + 0.01 * k;
    const double f = gamma_equation(g);
    if ((fprev < 0.0) != (f < 0.0)) {
      ++out.sign_changes;
      if (!found) {
        out.bracket_lo = prev;
        out.bracket_hi = g;
        found = true;
      }
    }
    prev = g;
    fprev = f;
  }
  if (!found) throw std::runtime_error("no sign change of the gamma equation in (0.1, 10)");
  double lo = out.bracket_lo, hi = out.bracket_hi;
  const bool lo_neg = gamma_equation(lo) < 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((gamma_equation(mid) < 0.0) == lo_neg)
      lo = mid;
    else
      hi = mid;
  }
  out.gamma0 = std::abs(gamma_equation(lo)) < std::abs(gamma_equation(hi)) ? lo : hi;
  out.residual = std::abs(gamma_equation(out.gamma0));
  return out;
}

double kernel_prefactor(double n) { return n / (std::sqrt(3.0) * kPi * kPi); }

namespace {

const GaussRule& gl64() {
  static const GaussRule rule = gauss_legendre(64);
  return rule;
}

}  // namespace

double channel_kernel(const HomogeneousKernelSpec& spec, int l, double x, double y) {
  const GaussRule& g = gl64();
  double s = 0.0;
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    const double u = g.nodes[k];
    s += g.weights[k] * std::legendre(static_cast<unsigned>(l), u) / (x * x + x * y * u + y * y);
  }
  return 2.0 * kPi * spec.c * s / std::sqrt(x * y);
}

Eigen::MatrixXd channel_matrix(const HomogeneousKernelSpec& spec, int l) {
  if (!(spec.r > 1.0)) throw std::invalid_argument("shell radius r must exceed 1");
  const int m = spec.m;
  const double h = std::log(spec.r) / m;
  std::vector<double> x(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) x[static_cast<std::size_t>(i)] = std::exp((i + 0.5) * h);
  // By homogeneity the symmetrized kernel depends on xi_i - xi_j only.
  std::vector<double> k(static_cast<std::size_t>(m));
  for (int d = 0; d < m; ++d) {
    const double a = std::exp(0.5 * d * h), b = std::exp(-0.5 * d * h);
    k[static_cast<std::size_t>(d)] = h * channel_kernel(spec, l, a, b);
  }
  Eigen::MatrixXd out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out(i, j) = k[static_cast<std::size_t>(std::abs(i - j))];
  return out;
}

std::size_t channel_count(const HomogeneousKernelSpec& spec, int l) {
  return count_above(channel_matrix(spec, l), 1.0);
}

TotalCount total_count(const HomogeneousKernelSpec& spec) {
  if (spec.l_max < 0) throw std::invalid_argument("channel cutoff L must be non-negative");
  TotalCount out;
  out.per_channel.assign(static_cast<std::size_t>(spec.l_max + 1), 0);
  if (spec.r <= 1.0) return out;
#pragma omp parallel for schedule(dynamic)
  for (int l = 0; l <= spec.l_max; ++l)
    out.per_channel[static_cast<std::size_t>(l)] = channel_count(spec, l);
  for (int l = 0; l <= spec.l_max; ++l)
    out.total += static_cast<std::size_t>(2 * l + 1) * out.per_channel[static_cast<std::size_t>(l)];
  if (out.per_channel.back() > 0) {
    out.converged_in_l = false;
    warn("channel counts still growing at l=L");
  }
  return out;
}

SlopeReport total_count_slope(HomogeneousKernelSpec spec, std::span<const double> r_list) {
  if (r_list.size() < 2) throw std::invalid_argument("slope report needs at least 2 radii");
  SlopeReport out;
  out.r_list.assign(r_list.begin(), r_list.end());
  std::vector<double> x, y;
  for (double r : r_list) {
    spec.r = r;
    const auto t = total_count(spec);
    out.totals.push_back(t.total);
    x.push_back(std::log(r));
    y.push_back(static_cast<double>(t.total));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  out.slope_log_r = sxy / sxx;
  out.slope_2log_r = 0.5 * out.slope_log_r;
  return out;
}

double swave_symbol(const HomogeneousKernelSpec& spec, double gamma) {
  constexpr double kHalfWidth = 40.0;
  constexpr double kStep = 1e-3;
  const int n = static_cast<int>(std::lround(kHalfWidth / kStep));
  double s = 0.0;
  for (int i = -n; i <= n; ++i) {
    const double t = i * kStep;
    const double w = (i == -n || i == n) ? 0.5 : 1.0;
    s += w * channel_kernel(spec, 0, std::exp(0.5 * t), std::exp(-0.5 * t)) * std::cos(gamma * t);
  }
  return s * kStep;
}

// ---------------------------------------------------------------------------

namespace {

struct BallGeometry {
  std::vector<TorusPoint> centers;  // resonant points
  double delta;
};

BallGeometry balls(const ModelParams& params, const TorusGrid& grid, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (delta < grid.spacing())
    throw std::invalid_argument("grid does not resolve delta (spacing " +
                                std::to_string(grid.spacing()) + ")");
  BallGeometry b{{}, delta};
  for (std::size_t i = 0; i < params.minima.n_resonant; ++i)
    b.centers.push_back(params.minima.points[i]);
  for (std::size_t i = 0; i < b.centers.size(); ++i)
    for (std::size_t j = i + 1; j < b.centers.size(); ++j)
      if (torus_distance(b.centers[i], b.centers[j]) < 2.0 * delta)
        throw std::invalid_argument("delta balls around the minima overlap");
  return b;
}

// Ball index of each node (-1 outside every ball) and the offset from its center.
void locate(const BallGeometry& b, const TorusGrid& grid, std::vector<int>& ball,
            std::vector<TorusPoint>& off) {
  ball.assign(grid.size(), -1);
  off.assign(grid.size(), TorusPoint());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const TorusPoint p = grid.node(i);
    for (std::size_t c = 0; c < b.centers.size(); ++c) {
      const TorusPoint d = p - b.centers[c];
      if (d.norm() < b.delta) {
        ball[i] = static_cast<int>(c);
        off[i] = d;
        break;
      }
    }
  }
}

double localized_entry(const TorusPoint& dp, const TorusPoint& dq, double az) {
  const double a = std::pow(0.75 * dp.dot(dp) + az, -0.25);
  const double b = std::pow(0.75 * dq.dot(dq) + az, -0.25);
  return a * b / (dp.dot(dp) + dp.dot(dq) + dq.dot(dq) + az) / (2.0 * kPi * kPi);
}

}  // namespace

KernelMatrix localized_bs(const ModelParams& params, const TorusGrid& grid,
                          const LocalizedKernelSpec& spec, int ball) {
  if (!(spec.z < 0.0)) throw std::invalid_argument("z must be negative");
  const BallGeometry b = balls(params, grid, spec.delta);
  std::vector<int> where;
  std::vector<TorusPoint> off;
  locate(b, grid, where, off);
  const std::size_t g = grid.size();
  const double wt = grid.weight(), az = -spec.z;
  KernelMatrix out;
  out.grid_n = grid.n();
  out.shift = grid.shift();
  out.z = spec.z;
  out.mu = params.mu;
  out.a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(g));
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < g; ++c) {
    if (where[c] < 0 || (ball >= 0 && where[c] != ball)) continue;
    for (std::size_t r = 0; r < g; ++r)
      if (where[r] == where[c])
        out.a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            wt * localized_entry(off[r], off[c], az);
  }
  return out;
}

double hs_error(const ModelParams& params, const TorusGrid& grid, const LocalizedKernelSpec& spec) {
  if (!(spec.z < 0.0)) throw std::invalid_argument("z must be negative");
  const BallGeometry b = balls(params, grid, spec.delta);
  std::vector<int> where;
  std::vector<TorusPoint> off;
  locate(b, grid, where, off);
  const GridFields fields(params.m, params.phi, grid);
  const std::vector<double> delta = grid_delta(fields, params.mu, spec.z);
  for (std::size_t i = 0; i < delta.size(); ++i)
    if (!(delta[i] > 0.0))
      throw std::domain_error("z not below two-particle branch for this mu (node " +
                              grid.node(i).str() + ")");
  const std::size_t g = fields.size();
  const double wt = fields.weight(), az = -spec.z, z = spec.z;
  std::vector<double> s(g);
  for (std::size_t i = 0; i < g; ++i) s[i] = fields.phi(i) * std::sqrt(params.mu * wt / delta[i]);
  std::vector<double> rows(g);
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < g; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < g; ++c) {
      double d = s[r] * s[c] / (fields.w(r, c) - z);
      if (where[r] >= 0 && where[r] == where[c]) d -= wt * localized_entry(off[r], off[c], az);
      acc += d * d;
    }
    rows[r] = acc;
  }
  double total = 0.0;
  for (double x : rows) total += x;
  return std::sqrt(total);
}

ReadingReport limit_readings(double n_bold, std::span<const double> r_list, int l_max, int m) {
  ReadingReport out;
  out.n_bold = n_bold;
  out.target = n_bold * solve_gamma0().gamma0 / (4.0 * kPi);
  out.blocks = total_count_slope({kernel_prefactor(1.0), 10.0, l_max, m}, r_list);
  out.blocks_slope = n_bold * out.blocks.slope_2log_r;
  out.scaled_kernel = total_count_slope({kernel_prefactor(n_bold), 10.0, l_max, m}, r_list);
  out.scaled_kernel_slope = out.scaled_kernel.slope_2log_r;
  return out;
}

}  // namespace efimov
