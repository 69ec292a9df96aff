#include "efimov/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "efimov/gauss.hpp"

namespace efimov {

double dispersion_unit(const std::array<double, 3>& v) {
  double s = 0.0;
  for (double x : v) {
    const double h = std::sin(0.5 * x);
    s += 2.0 * h * h;
  }
  return s;
}

namespace {

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

}  // namespace

ThresholdIntegrator::ThresholdIntegrator(CosineSeries folded_phi2, ThresholdOptions options)
    : phi_(std::move(folded_phi2)), opt_(options) {
  if (!(opt_.inner_radius > 0.0 && opt_.outer_radius > opt_.inner_radius &&
        opt_.outer_radius < kPi))
    throw std::invalid_argument("threshold cutoff radii must satisfy 0 < R1 < R2 < pi");
  phi0_ = phi_.eval({0.0, 0.0, 0.0});

  const GaussRule polar = gauss_legendre(opt_.polar);
  for (std::size_t a = 0; a < polar.nodes.size(); ++a) {
    const double ct = polar.nodes[a];
    const double st = std::sqrt(1.0 - ct * ct);
    for (int b = 0; b < opt_.azimuth; ++b) {
      const double ph = kTwoPi * (b + 0.5) / opt_.azimuth;
      dirs_.push_back({st * std::cos(ph), st * std::sin(ph), ct});
      dir_weights_.push_back(polar.weights[a] * kTwoPi / opt_.azimuth);
    }
  }

  const int n = opt_.outer_grid;
  const double h = kTwoPi / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const std::array<double, 3> v{-kPi + (i + 0.5) * h, -kPi + (j + 0.5) * h,
                                      -kPi + (k + 0.5) * h};
        const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        const double c = 1.0 - cutoff(r);
        if (c == 0.0) continue;
        const double e = dispersion_unit(v);
        outer_nodes_.push_back(v);
        outer_weights_.push_back(c * phi_.eval(v) * h * h * h);
        outer_eps_.push_back(e);
        outer_w0_.push_back(2.0 * e);
      }
}

double ThresholdIntegrator::cutoff(double r) const {
  return 1.0 - smooth_step((r - opt_.inner_radius) / (opt_.outer_radius - opt_.inner_radius));
}

double ThresholdIntegrator::integrand(const std::array<double, 3>& v, const TorusPoint& u,
                                      double eps_u, double z) const {
  const double ev = dispersion_unit(v);
  const double euv = dispersion_unit({u[0] + v[0], u[1] + v[1], u[2] + v[2]});
  const double w0 = 2.0 * ev;
  const double wu = eps_u + euv + ev - z;
  // 1/w0 - 1/wu with the difference formed in the numerator.
  return phi_.eval(v) * (wu - w0) / (w0 * wu);
}

double ThresholdIntegrator::difference(const TorusPoint& u, double z) const {
  if (z > 0.0) throw std::invalid_argument("threshold difference needs z <= 0");
  const double eps_u = dispersion_unit(u.coords());
  const double a = std::sqrt(0.75 * u.dot(u) - z);
  if (a == 0.0) return 0.0;
  const double s = std::max(a, opt_.min_scale);

  // Radial panels: geometric from s/8 up to R1, then four across the taper.
  std::vector<double> edges{0.0};
  for (double b = s / 8.0; b < opt_.inner_radius; b *= 2.0) edges.push_back(b);
  for (int k = 0; k <= 4; ++k)
    edges.push_back(opt_.inner_radius + (opt_.outer_radius - opt_.inner_radius) * k / 4.0);

  std::vector<double> rs, rw;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    if (edges[e + 1] <= edges[e]) continue;
    const GaussRule g = gauss_legendre(opt_.radial_order, edges[e], edges[e + 1]);
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
      const double r = g.nodes[k];
      rs.push_back(r);
      rw.push_back(g.weights[k] * r * r * cutoff(r));
    }
  }

  std::vector<double> shell(rs.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < rs.size(); ++k) {
    if (rw[k] == 0.0) continue;
    double acc = 0.0;
    for (std::size_t d = 0; d < dirs_.size(); ++d) {
      const auto& dir = dirs_[d];
      acc += dir_weights_[d] * integrand({rs[k] * dir[0], rs[k] * dir[1], rs[k] * dir[2]}, u,
                                         eps_u, z);
    }
    shell[k] = rw[k] * acc;
  }
  double inner = 0.0;
  for (double x : shell) inner += x;

  const std::size_t no = outer_nodes_.size();
  const int blocks = 64;
  std::vector<double> part(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (int b = 0; b < blocks; ++b) {
    double acc = 0.0;
    for (std::size_t i = no * b / blocks; i < no * (b + 1) / blocks; ++i) {
      const auto& v = outer_nodes_[i];
      const double euv = dispersion_unit({u[0] + v[0], u[1] + v[1], u[2] + v[2]});
      const double wu = eps_u + euv + outer_eps_[i] - z;
      acc += outer_weights_[i] * (wu - outer_w0_[i]) / (outer_w0_[i] * wu);
    }
    part[static_cast<std::size_t>(b)] = acc;
  }
  double outer = 0.0;
  for (double x : part) outer += x;
  return inner + outer;
}

}  // namespace efimov
