#pragma once

// Nystrom discretization of the Birman-Schwinger operator T_mu(z),
// eigenvalue counting above 1, counting curves N(z) and log-slope fits.

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "efimov/fields.hpp"
#include "efimov/friedrichs.hpp"
#include "efimov/linalg.hpp"

namespace efimov {

struct KernelMatrix {
  Eigen::MatrixXd a;
  int grid_n = 0;
  double shift = 0.0;
  double z = 0.0;
  double mu = 0.0;
  bool reduced = false;        // assembled on the coset-reduced grid
  std::vector<double> delta;   // Delta_mu(node; z), one per row
  static constexpr const char* kConvention = "sqrt(w_i) k(p_i, p_j) sqrt(w_j)";

  std::size_t size() const { return static_cast<std::size_t>(a.rows()); }
};

/// Delta_mu(p_i; z) at every node of `fields`, summed over the same nodes.
std::vector<double> grid_delta(const GridFields& fields, double mu, double z);

/// Full G x G matrix with G = N^3, rows in parallel. `order`, if given, is a
/// permutation of the node indices used for rows and columns.
KernelMatrix assemble_bs(const ModelParams& params, const TorusGrid& grid, double z,
                         std::span<const std::size_t> order = {});
/// Single-threaded reference assembly of the same matrix.
KernelMatrix assemble_bs_serial(const ModelParams& params, const TorusGrid& grid, double z);

/// Matrix with the same eigenvalues above 0 as assemble_bs, on (N/m)^3
/// nodes. The kernel depends on the nodes only through m p mod 2pi, so the
/// N^3 nodes fall into (N/m)^3 classes of m^3 nodes each and the operator
/// factors through the class map. Requires m | N.
KernelMatrix assemble_bs_reduced(const ModelParams& params, const TorusGrid& grid, double z);

/// Largest N^3 for which bs_count assembles the full matrix when the
/// reduction is unavailable.
inline constexpr std::size_t kFullAssemblyLimit = 8000;

/// d(1, T_mu(z)) on `grid`, through the reduced matrix when m | N.
std::size_t bs_count(const ModelParams& params, const TorusGrid& grid, double z,
                     CountMethod method = CountMethod::kAuto);

struct GridPolicy {
  bool adaptive = true;
  int n_fixed = 20;
  double c = 6.0;
  int n_max = 30;
};

/// Smallest N >= n on which the reduction applies and no node sits on a
/// minimum: m | N, with N/m even for odd m.
int admissible_n(int n, int m);
/// Grid size used by the policy at energy z.
int policy_n(const GridPolicy& policy, double z, int m);

struct CountPoint {
  double z = 0.0;
  std::size_t count = 0;
  int grid_n = 0;
  std::size_t count_refined = 0;  // same z at the next admissible N >= grid_n + 4
  int refined_n = 0;
  bool saturated = false;         // count_refined != count
};

struct CountCurve {
  std::vector<CountPoint> points;
  GridPolicy policy;

  bool nonincreasing_as_z_decreases() const;
};

CountCurve nz_curve(const ModelParams& params, std::span<const double> z_list,
                    const GridPolicy& policy = {});

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // Euclidean norm of the fit residuals
  double z_min = 0.0;
  double z_max = 0.0;
  std::size_t used = 0;
  std::size_t dropped = 0;
};

/// Least squares of count against |log|z|| over the points with
/// z in [z_min, z_max] that are not saturated.
SlopeFit slope_fit(const CountCurve& curve, double z_min, double z_max);

}  // namespace efimov
