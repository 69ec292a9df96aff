#pragma once

// The two-particle (Friedrichs) channel h_mu(p) = w(p, .) - mu v: its
// essential-spectrum interval, the Fredholm determinant Delta_mu(p; z), the
// critical coupling mu0, discrete eigenvalues, the two-particle branch of
// the three-particle essential spectrum, and threshold diagnostics.

#include <optional>
#include <span>
#include <vector>

#include "efimov/fields.hpp"
#include "efimov/quadrature.hpp"
#include "efimov/threshold.hpp"
#include "efimov/torus.hpp"

namespace efimov {

struct ModelParams {
  LatticeOrder m;
  CosineSeries phi;
  double mu;
  MinimaSet minima;
};

ModelParams make_params(const LatticeOrder& m, const CosineSeries& phi, double mu);
ModelParams with_mu(const ModelParams& params, double mu);

inline constexpr double kThreeParticleTop = 13.5;  // max of w over the torus squared

struct EssInterval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Closed form: epsilon(p) + 2 sum_j (1 -+ |cos(m p_j / 2)|).
EssInterval ess_interval_closed_form(const LatticeOrder& m, const TorusPoint& p);
/// Brute-force min/max of q -> w(p, q) on a 24^3 grid with local refinement.
EssInterval ess_interval_bruteforce(const LatticeOrder& m, const TorusPoint& p);
/// Closed form, self-checked against the brute-force oracle (hard error if
/// they differ by more than 1e-4).
EssInterval ess_interval(const LatticeOrder& m, const TorusPoint& p);

/// Grid sum of phi^2 / epsilon (node order fixed, so the result is
/// reproducible bit for bit).
double phi2_over_eps(const GridFields& fields);

/// Delta_mu(p; z) and Lambda(p) on a fixed quadrature grid. Construction
/// tabulates phi on the nodes; evaluation is one pass over the grid.
class FredholmEvaluator {
 public:
  FredholmEvaluator(const ModelParams& params, const TorusGrid& grid);
  FredholmEvaluator(const LatticeOrder& m, const CosineSeries& phi, double mu,
                    const TorusGrid& grid);

  const TorusGrid& grid() const { return fields_.grid(); }
  const GridFields& fields() const { return fields_; }
  double mu() const { return mu_; }
  const LatticeOrder& order() const { return m_; }

  /// integral of phi^2(q) / (w(p, q) - z) over the grid.
  double resolvent_integral(const TorusPoint& p, double z) const;
  /// Delta_mu(p; z) = 1 - mu * resolvent_integral(p, z). Throws
  /// "z inside essential spectrum" unless z < m(p), or z = 0 on a grid that
  /// avoids the minima.
  double delta(const TorusPoint& p, double z) const;
  /// Lambda(p) = integral of phi^2 / w(p, .), i.e. (1 - Delta(p; 0)) / mu.
  double lambda(const TorusPoint& p) const;
  /// integral of phi^2 / epsilon.
  double phi2_over_eps() const { return efimov::phi2_over_eps(fields_); }

  /// Delta at every grid node, with w taken from the node tables.
  std::vector<double> delta_on_nodes(double z) const;

 private:
  LatticeOrder m_;
  double mu_;
  GridFields fields_;
  std::vector<double> e1_;  // 1 - cos(m x) per axis node
};

double fredholm_det(const ModelParams& params, const TorusGrid& grid, const TorusPoint& p,
                    double z);
double lambda_integral(const ModelParams& params, const TorusGrid& grid, const TorusPoint& p);

struct Mu0Result {
  double value = 0.0;                 // 2 / extrapolated integral of phi^2 / epsilon
  RichardsonResult integral;          // extrapolation of that integral
  std::vector<double> per_grid;       // 2 / grid sum, one per N
};

/// Critical coupling from a Richardson-extrapolated integral of
/// phi^2/epsilon. The integral is evaluated after the substitution u = m q,
/// which folds all minima onto the origin of a single m = 1 torus.
Mu0Result mu0(const LatticeOrder& m, const CosineSeries& phi, std::span<const int> ns);

/// Critical coupling of the discretized model on `grid` (same quadrature
/// as Delta on that grid), so that Delta(p_s1; 0) vanishes to rounding.
double mu0_matched(const LatticeOrder& m, const CosineSeries& phi, const TorusGrid& grid);

/// Unique zero of z -> Delta(p; z) in [z_floor, m(p) - 1e-12], if any.
std::optional<double> disc_eigenvalue(const FredholmEvaluator& eval, const TorusPoint& p,
                                      double z_floor);
std::optional<double> disc_eigenvalue(const ModelParams& params, const TorusGrid& grid,
                                      const TorusPoint& p, double z_floor);

struct BranchPoint {
  TorusPoint p;
  std::optional<double> eigenvalue;
};

struct BranchCurve {
  std::vector<BranchPoint> points;
  double tau_ess = 0.0;
  EssInterval three_particle{0.0, kThreeParticleTop};
};

BranchCurve two_particle_branch(const ModelParams& params, std::span<const TorusPoint> p_grid,
                                const TorusGrid& grid);

struct ResonanceReport {
  double mu0 = 0.0;                  // matched on the finest grid
  std::vector<int> ns;
  std::vector<double> l1_proxy;      // integral |f|
  std::vector<double> l2_proxy;      // integral |f|^2
  bool l1_converging = false;
  bool l2_diverging = false;
  double max_residual = 0.0;         // max |h_mu0(p_s1) f| over finest nodes
  double g_eigenvalue = 0.0;         // (mu0 / 2) integral phi^2 / epsilon
  double g_eigenvector_defect = 0.0; // max |G phi - lambda phi| / max |phi|
};

/// Checks the zero-energy resonance function f = mu0 phi / (2 epsilon) on a
/// sequence of grids that avoid the minima.
ResonanceReport resonance_residual(const LatticeOrder& m, const CosineSeries& phi,
                                   std::span<const TorusGrid> grids);

/// Delta_mu(p; z) in the continuum, from the extrapolated mu0 and the
/// localized threshold quadrature: 1 - mu/mu0 + mu * D(m p, z).
double fredholm_det_continuum(const ModelParams& params, const ThresholdIntegrator& integ,
                              double mu0, const TorusPoint& p, double z);

struct DeltaOffset {
  TorusPoint dp;
  double z = 0.0;
};

struct DecompositionSample {
  double dp_norm = 0.0;
  double z = 0.0;
  double delta = 0.0;
  double leading_literal = 0.0;  // 2 pi^2 mu0 S sqrt(3/4 |dp|^2 - z)
  double leading_scaled = 0.0;   // 2 pi^2 mu0 m^-3 S sqrt(3/4 m^2 |dp|^2 - z)
  double ratio_literal = 0.0;
  double ratio_scaled = 0.0;
};

struct DecompositionReport {
  std::size_t index = 0;
  bool resonant = false;
  std::vector<DecompositionSample> samples;
  std::optional<double> exponent;  // log-log slope of Delta(.; 0) in |dp|
  double c_lower = 0.0;            // min Delta / |dp|^2 over z = 0 samples
  double c_upper = 0.0;            // max Delta / |dp|^2 over z = 0 samples
};

inline constexpr double kDecompositionMaxOffset = 0.1;
inline constexpr double kDecompositionMaxEnergy = 1e-2;

/// Compares Delta_{mu0}(p_{s_i} + dp; z) with the square-root threshold
/// term, S the sum of phi^2 over the resonant points. `params.mu` must be
/// the extrapolated mu0.
DecompositionReport decomposition_residual(const ModelParams& params, std::size_t i,
                                           std::span<const DeltaOffset> offsets,
                                           const ThresholdOptions& options = {});

}  // namespace efimov
