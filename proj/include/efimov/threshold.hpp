#pragma once

// Localized quadrature for the threshold difference
//
//   D(u, z) = int_T3 Phi(v) [ 1 / W(0, v) - 1 / (W(u, v) - z) ] dv,
//
// where W is the m = 1 pair energy and Phi the folded phi^2 series. A smooth
// radial cutoff splits the torus into a ball around v = 0, integrated in
// spherical coordinates on geometrically graded radial panels, and a smooth
// periodic remainder summed on a uniform grid.

#include <vector>

#include "efimov/torus.hpp"

namespace efimov {

struct ThresholdOptions {
  double inner_radius = 0.6;   // cutoff is 1 below this
  double outer_radius = 1.2;   // and 0 above this
  int radial_order = 20;       // Gauss-Legendre nodes per radial panel
  int polar = 32;              // Gauss-Legendre nodes in cos(theta)
  int azimuth = 64;            // trapezoid nodes in the azimuth
  int outer_grid = 64;         // uniform grid for the remainder
  double min_scale = 1e-6;     // smallest sqrt(3/4 |u|^2 - z) accepted
};

class ThresholdIntegrator {
 public:
  ThresholdIntegrator(CosineSeries folded_phi2, ThresholdOptions options = {});

  /// D(u, z) for z <= 0, u on the folded torus.
  double difference(const TorusPoint& u, double z) const;

  const ThresholdOptions& options() const { return opt_; }
  double phi_at_origin() const { return phi0_; }

 private:
  double cutoff(double r) const;
  double integrand(const std::array<double, 3>& v, const TorusPoint& u, double eps_u,
                   double z) const;

  CosineSeries phi_;
  ThresholdOptions opt_;
  double phi0_;
  std::vector<std::array<double, 3>> dirs_;
  std::vector<double> dir_weights_;
  std::vector<std::array<double, 3>> outer_nodes_;
  std::vector<double> outer_weights_;  // (1 - cutoff) * Phi * cell volume
  std::vector<double> outer_w0_;       // W(0, v)
  std::vector<double> outer_eps_;      // epsilon_1(v)
};

/// epsilon_1(v) = sum_j 2 sin^2(v_j / 2), accurate for tiny v.
double dispersion_unit(const std::array<double, 3>& v);

}  // namespace efimov
