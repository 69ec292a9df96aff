#pragma once

// Threshold asymptotics: the gamma0 equation, the homogeneous limit kernel
// c (|p||q|)^{-1/2} / (|p|^2 + (p, q) + |q|^2) on the shell 1 <= |p| <= r
// reduced to angular-momentum channels, and the localized operator
// T(delta; |z|) built on balls around the minima.

#include <cstddef>
#include <span>
#include <vector>

#include "efimov/bs.hpp"
#include "efimov/friedrichs.hpp"

namespace efimov {

struct GammaSolution {
  double gamma0 = 0.0;
  double residual = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int sign_changes = 0;  // crossings found by the scan over (0.1, 10)
};

/// g(gamma) = sqrt(3) gamma cosh(pi gamma / 2) - 8 sinh(pi gamma / 6).
double gamma_equation(double gamma);
GammaSolution solve_gamma0(double tol = 1e-14);

struct HomogeneousKernelSpec {
  double c = 0.0;   // prefactor
  double r = 10.0;  // outer radius of the shell
  int l_max = 8;    // channel cutoff L
  int m = 400;      // log-radial nodes M
};

/// c = n / (sqrt(3) pi^2); n = 2 is the normalization under which the
/// s-wave symbol crosses 1 at gamma0.
double kernel_prefactor(double n);

/// K_l(x, y) = 2 pi c (x y)^{-1/2} int_{-1}^{1} P_l(u) / (x^2 + x y u + y^2) du.
double channel_kernel(const HomogeneousKernelSpec& spec, int l, double x, double y);

/// Symmetrized Nystrom matrix h x_i^{3/2} K_l(x_i, x_j) x_j^{3/2} on the
/// midpoint grid in xi = log x over [0, log r].
Eigen::MatrixXd channel_matrix(const HomogeneousKernelSpec& spec, int l);

std::size_t channel_count(const HomogeneousKernelSpec& spec, int l);

struct TotalCount {
  std::size_t total = 0;                // sum (2l + 1) count_l
  std::vector<std::size_t> per_channel;
  bool converged_in_l = true;           // count at l = L is 0
};

/// Warns "channel counts still growing at l=L" when the last channel counts.
TotalCount total_count(const HomogeneousKernelSpec& spec);

struct SlopeReport {
  std::vector<double> r_list;
  std::vector<std::size_t> totals;
  double slope_log_r = 0.0;   // d total / d log r
  double slope_2log_r = 0.0;  // d total / d (2 log r), comparable with gamma0 / (2 pi)
};

SlopeReport total_count_slope(HomogeneousKernelSpec spec, std::span<const double> r_list);

/// S(gamma) = int k0(t) cos(gamma t) dt over |t| <= 40 (trapezoid, step 1e-3),
/// k0(t) = K_0(e^{t/2}, e^{-t/2}) the s-wave kernel in the log variable.
double swave_symbol(const HomogeneousKernelSpec& spec, double gamma);

struct LocalizedKernelSpec {
  double delta = 0.6;
  double z = -1e-2;
};

/// T(delta; |z|) on the grid, one block per localized pair (p_{s_i}, q_{s_i}),
/// i over the resonant points. `ball` restricts to a single block.
KernelMatrix localized_bs(const ModelParams& params, const TorusGrid& grid,
                          const LocalizedKernelSpec& spec, int ball = -1);

/// Frobenius norm of T_mu(z) - T(delta; |z|) in the weighted
/// discretization, streamed row by row.
double hs_error(const ModelParams& params, const TorusGrid& grid, const LocalizedKernelSpec& spec);

struct ReadingReport {
  double n_bold = 0.0;
  double target = 0.0;             // n gamma0 / (4 pi)
  SlopeReport blocks;              // (a) c = 1/(sqrt3 pi^2), scaled by n
  double blocks_slope = 0.0;       //     n * slope against 2 log r
  SlopeReport scaled_kernel;       // (b) c = n/(sqrt3 pi^2)
  double scaled_kernel_slope = 0.0;
};

/// Readings (a) and (b) of the coefficient for n_bold localized blocks;
/// reading (c) comes from slope_fit on a bs_reduction curve.
ReadingReport limit_readings(double n_bold, std::span<const double> r_list, int l_max, int m);

}  // namespace efimov
