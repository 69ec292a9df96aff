#include "efimov/friedrichs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "efimov/diagnostics.hpp"

namespace efimov {

ModelParams make_params(const LatticeOrder& m, const CosineSeries& phi, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be positive");
  return {m, phi, mu, enumerate_minima(m, phi)};
}

ModelParams with_mu(const ModelParams& params, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be positive");
  ModelParams out = params;
  out.mu = mu;
  return out;
}

// ---------------------------------------------------------------------------

EssInterval ess_interval_closed_form(const LatticeOrder& m, const TorusPoint& p) {
  const double e = dispersion(m, p);
  double lo = e, hi = e;
  for (int j = 0; j < 3; ++j) {
    const double c = std::abs(std::cos(0.5 * m.value() * p[j]));
    lo += 2.0 - 2.0 * c;
    hi += 2.0 + 2.0 * c;
  }
  return {lo, hi};
}

namespace {

// w(p, q) - epsilon(p) separates over the axes of q.
double axis_term(double mm, double pj, double qj) {
  return (1.0 - std::cos(mm * (pj + qj))) + (1.0 - std::cos(mm * qj));
}

double golden_section(double mm, double pj, double a, double b, double sign) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [&](double x) { return sign * axis_term(mm, pj, x); };
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return sign * f(0.5 * (a + b));
}

}  // namespace

EssInterval ess_interval_bruteforce(const LatticeOrder& m, const TorusPoint& p) {
  constexpr int kGrid = 24;
  const double mm = m.value();
  const double h = kTwoPi / kGrid;
  double best_lo = 1e300, best_hi = -1e300;
  std::array<double, 3> arg_lo{}, arg_hi{};
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j)
      for (int k = 0; k < kGrid; ++k) {
        const TorusPoint q(-kPi + i * h, -kPi + j * h, -kPi + k * h);
        const double w = pair_energy(m, p, q);
        if (w < best_lo) {
          best_lo = w;
          arg_lo = q.coords();
        }
        if (w > best_hi) {
          best_hi = w;
          arg_hi = q.coords();
        }
      }
  // Refine each axis around the best grid node.
  double lo = dispersion(m, p), hi = lo;
  for (int j = 0; j < 3; ++j) {
    lo += golden_section(mm, p[j], arg_lo[j] - h, arg_lo[j] + h, 1.0);
    hi += golden_section(mm, p[j], arg_hi[j] - h, arg_hi[j] + h, -1.0);
  }
  return {std::min(lo, best_lo), std::max(hi, best_hi)};
}

EssInterval ess_interval(const LatticeOrder& m, const TorusPoint& p) {
  const EssInterval closed = ess_interval_closed_form(m, p);
  const EssInterval brute = ess_interval_bruteforce(m, p);
  const double d = std::max(std::abs(closed.lower - brute.lower),
                            std::abs(closed.upper - brute.upper));
  if (d > 1e-4) {
    std::ostringstream os;
    os << "essential interval closed form disagrees with brute force at " << p.str()
       << " by " << d;
    throw std::logic_error(os.str());
  }
  if (d > 1e-6) warn("essential interval self-check off by " + std::to_string(d));
  return closed;
}

// ---------------------------------------------------------------------------

double phi2_over_eps(const GridFields& fields) {
  const auto n = static_cast<std::size_t>(fields.grid().n());
  return integrate_indexed(fields.grid(), [&](int i, int j, int k) {
    const std::size_t f = (static_cast<std::size_t>(i) * n + j) * n + k;
    return fields.phi2(f) / fields.eps(f);
  });
}

FredholmEvaluator::FredholmEvaluator(const ModelParams& params, const TorusGrid& grid)
    : FredholmEvaluator(params.m, params.phi, params.mu, grid) {}

FredholmEvaluator::FredholmEvaluator(const LatticeOrder& m, const CosineSeries& phi, double mu,
                                     const TorusGrid& grid)
    : m_(m), mu_(mu), fields_(m, phi, grid) {
  if (!grid.avoids_minima().has_value() || grid.checked_order() != m.value())
    fields_ = GridFields(m, phi, build_grid(grid.n(), grid.shift(), m));
}

double FredholmEvaluator::resolvent_integral(const TorusPoint& p, double z) const {
  const auto& g = fields_.grid();
  const auto n = static_cast<std::size_t>(g.n());
  const double mm = m_.value();
  const double ep = dispersion(m_, p);
  std::array<std::vector<double>, 3> pa;
  for (int a = 0; a < 3; ++a) {
    pa[a].resize(n);
    for (std::size_t i = 0; i < n; ++i) pa[a][i] = 1.0 - std::cos(mm * (p[a] + g.axis()[i]));
  }
  return integrate_indexed(g, [&](int i, int j, int k) {
    const std::size_t f = (static_cast<std::size_t>(i) * n + j) * n + k;
    const double w = ep + (pa[0][i] + pa[1][j] + pa[2][k]) + fields_.eps(f);
    return fields_.phi2(f) / (w - z);
  });
}

double FredholmEvaluator::delta(const TorusPoint& p, double z) const {
  const double lower = ess_interval_closed_form(m_, p).lower;
  const bool threshold_ok = z == 0.0 && fields_.grid().avoids_minima().value_or(false);
  if (!(z < lower) && !threshold_ok) {
    std::ostringstream os;
    os << "z inside essential spectrum: z=" << z << " >= m(p)=" << lower << " at p=" << p.str();
    throw std::domain_error(os.str());
  }
  return 1.0 - mu_ * resolvent_integral(p, z);
}

double FredholmEvaluator::lambda(const TorusPoint& p) const { return resolvent_integral(p, 0.0); }

std::vector<double> FredholmEvaluator::delta_on_nodes(double z) const {
  const auto& g = fields_.grid();
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const TorusPoint p = g.node(i);
    if (!(z < ess_interval_closed_form(m_, p).lower))
      throw std::domain_error("z inside essential spectrum at node " + p.str());
  }
  // Serial over nodes, each one a deterministic parallel grid sum.
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = 1.0 - mu_ * resolvent_integral(g.node(i), z);
  return out;
}

double fredholm_det(const ModelParams& params, const TorusGrid& grid, const TorusPoint& p,
                    double z) {
  return FredholmEvaluator(params, grid).delta(p, z);
}

double lambda_integral(const ModelParams& params, const TorusGrid& grid, const TorusPoint& p) {
  return FredholmEvaluator(params, grid).lambda(p);
}

// ---------------------------------------------------------------------------

Mu0Result mu0(const LatticeOrder& m, const CosineSeries& phi, std::span<const int> ns) {
  if (ns.size() < 3) throw std::invalid_argument("mu0 needs at least 3 grid sizes");
  const CosineSeries fold = folded(phi * phi, m.value());
  const LatticeOrder unit(1, true);
  Mu0Result out;
  out.integral = richardson_integrate(
      [&](const TorusPoint& v) { return fold(v) / dispersion_unit(v.coords()); }, ns, unit);
  for (double s : out.integral.raw) out.per_grid.push_back(2.0 / s);
  out.value = 2.0 / out.integral.value;
  for (std::size_t i = 2; i < out.per_grid.size(); ++i) {
    const double d1 = out.per_grid[i - 1] - out.per_grid[i - 2];
    const double d2 = out.per_grid[i] - out.per_grid[i - 1];
    if (d1 * d2 < 0.0) {
      warn("mu0 grid sequence is not monotone");
      break;
    }
  }
  if (!out.integral.converging) warn("mu0 Richardson stages are not converging");
  return out;
}

double mu0_matched(const LatticeOrder& m, const CosineSeries& phi, const TorusGrid& grid) {
  TorusGrid g = grid;
  if (!g.avoids_minima().has_value() || g.checked_order() != m.value()) g.check_avoidance(m.value());
  if (!g.avoids_minima().value())
    throw std::invalid_argument("matched mu0 needs a grid that avoids the minima");
  return 2.0 / phi2_over_eps(GridFields(m, phi, g));
}

// ---------------------------------------------------------------------------

std::optional<double> disc_eigenvalue(const FredholmEvaluator& eval, const TorusPoint& p,
                                      double z_floor) {
  const double lower = ess_interval_closed_form(eval.order(), p).lower;
  double hi = lower - 1e-12;
  double lo = z_floor;
  if (!(lo < hi)) throw std::invalid_argument("z_floor must lie below the essential interval");
  const double d_lo = eval.delta(p, lo);
  if (d_lo < 0.0) {
    std::ostringstream os;
    os << "floor too high, eigenvalue below bracket (Delta(p; z_floor) < 0 at p=" << p.str()
       << ")";
    throw std::domain_error(os.str());
  }
  if (eval.delta(p, hi) >= 0.0) return std::nullopt;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (eval.delta(p, mid) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::optional<double> disc_eigenvalue(const ModelParams& params, const TorusGrid& grid,
                                      const TorusPoint& p, double z_floor) {
  return disc_eigenvalue(FredholmEvaluator(params, grid), p, z_floor);
}

BranchCurve two_particle_branch(const ModelParams& params, std::span<const TorusPoint> p_grid,
                                const TorusGrid& grid) {
  const FredholmEvaluator eval(params, grid);
  const double phi_norm2 = integrate(eval.grid(), [&](const TorusPoint& q) {
    const double v = params.phi(q);
    return v * v;
  });
  const double z_floor = -params.mu * phi_norm2 - 1.0;
  BranchCurve out;
  out.tau_ess = 0.0;
  for (const auto& p : p_grid) {
    auto e = disc_eigenvalue(eval, p, z_floor);
    if (e) out.tau_ess = std::min(out.tau_ess, *e);
    out.points.push_back({p, e});
  }
  return out;
}

// ---------------------------------------------------------------------------

ResonanceReport resonance_residual(const LatticeOrder& m, const CosineSeries& phi,
                                   std::span<const TorusGrid> grids) {
  if (grids.empty()) throw std::invalid_argument("resonance check needs at least one grid");
  ResonanceReport out;
  for (const auto& grid : grids) {
    TorusGrid g = grid;
    g.check_avoidance(m.value());
    if (!g.avoids_minima().value())
      throw std::invalid_argument("resonance check needs grids that avoid the minima");
    const GridFields fields(m, phi, g);
    const double mu = 2.0 / phi2_over_eps(fields);
    const auto n = static_cast<std::size_t>(g.n());
    auto fval = [&](int i, int j, int k) {
      const std::size_t f = (static_cast<std::size_t>(i) * n + j) * n + k;
      return mu * fields.phi(f) / (2.0 * fields.eps(f));
    };
    out.ns.push_back(g.n());
    out.l1_proxy.push_back(integrate_indexed(g, [&](int i, int j, int k) {
      return std::abs(fval(i, j, k));
    }));
    out.l2_proxy.push_back(integrate_indexed(g, [&](int i, int j, int k) {
      const double v = fval(i, j, k);
      return v * v;
    }));

    if (&grid == &grids.back()) {
      out.mu0 = mu;
      // h_mu0(0) f = 2 epsilon f - mu0 phi <phi, f>.
      const double proj = integrate_indexed(g, [&](int i, int j, int k) {
        const std::size_t f = (static_cast<std::size_t>(i) * n + j) * n + k;
        return fields.phi(f) * fval(i, j, k);
      });
      double res = 0.0, gdef = 0.0, phimax = 0.0;
      const double s = phi2_over_eps(fields);
      out.g_eigenvalue = 0.5 * mu * s;
      for (std::size_t f = 0; f < fields.size(); ++f) {
        const auto ij = g.node_indices(f);
        const double hf = 2.0 * fields.eps(f) * fval(ij[0], ij[1], ij[2]) - mu * fields.phi(f) * proj;
        res = std::max(res, std::abs(hf));
        const double gphi = 0.5 * mu * fields.phi(f) * s;
        gdef = std::max(gdef, std::abs(gphi - out.g_eigenvalue * fields.phi(f)));
        phimax = std::max(phimax, std::abs(fields.phi(f)));
      }
      out.max_residual = res;
      out.g_eigenvector_defect = phimax > 0.0 ? gdef / phimax : 0.0;
    }
  }
  out.l1_converging = true;
  for (std::size_t i = 2; i < out.l1_proxy.size(); ++i)
    if (std::abs(out.l1_proxy[i] - out.l1_proxy[i - 1]) >
        std::abs(out.l1_proxy[i - 1] - out.l1_proxy[i - 2]) + 1e-14)
      out.l1_converging = false;
  out.l2_diverging = out.l2_proxy.size() >= 2;
  for (std::size_t i = 1; i < out.l2_proxy.size(); ++i)
    if (!(out.l2_proxy[i] > out.l2_proxy[i - 1])) out.l2_diverging = false;
  return out;
}

// ---------------------------------------------------------------------------

double fredholm_det_continuum(const ModelParams& params, const ThresholdIntegrator& integ,
                              double mu0, const TorusPoint& p, double z) {
  const double mm = params.m.value();
  const TorusPoint u(mm * p[0], mm * p[1], mm * p[2]);
  return 1.0 - params.mu / mu0 + params.mu * integ.difference(u, z);
}

DecompositionReport decomposition_residual(const ModelParams& params, std::size_t i,
                                           std::span<const DeltaOffset> offsets,
                                           const ThresholdOptions& options) {
  const auto& ms = params.minima;
  if (i >= ms.points.size()) throw std::out_of_range("minimum index out of range");
  const double mm = params.m.value();
  const double mu0 = params.mu;
  const double s = ms.resonant_phi2_sum();
  const ThresholdIntegrator integ(folded(params.phi * params.phi, params.m.value()), options);

  DecompositionReport out;
  out.index = i;
  out.resonant = ms.is_resonant(i);
  std::vector<double> lx, ly;
  out.c_lower = 1e300;
  out.c_upper = 0.0;
  for (const auto& off : offsets) {
    const double r = off.dp.norm();
    if (r > kDecompositionMaxOffset || off.z > 0.0 || -off.z > kDecompositionMaxEnergy)
      throw std::invalid_argument("offset outside the threshold neighbourhood");
    const double a_lit = std::sqrt(0.75 * r * r - off.z);
    const double a_sc = std::sqrt(0.75 * mm * mm * r * r - off.z);
    if (a_sc < options.min_scale)
      throw std::invalid_argument("offset unresolvable by the threshold quadrature");
    DecompositionSample smp;
    smp.dp_norm = r;
    smp.z = off.z;
    smp.delta = fredholm_det_continuum(params, integ, mu0, ms.points[i] + off.dp, off.z);
    smp.leading_literal = 2.0 * kPi * kPi * mu0 * s * a_lit;
    smp.leading_scaled = 2.0 * kPi * kPi * mu0 * s / (mm * mm * mm) * a_sc;
    smp.ratio_literal = smp.delta / smp.leading_literal;
    smp.ratio_scaled = smp.delta / smp.leading_scaled;
    if (off.z == 0.0 && r > 0.0) {
      lx.push_back(std::log(r));
      ly.push_back(std::log(std::abs(smp.delta)));
      out.c_lower = std::min(out.c_lower, smp.delta / (r * r));
      out.c_upper = std::max(out.c_upper, smp.delta / (r * r));
    }
    out.samples.push_back(smp);
  }
  if (lx.empty()) out.c_lower = 0.0;
  if (lx.size() >= 2 && *std::max_element(lx.begin(), lx.end()) >
                            *std::min_element(lx.begin(), lx.end()) + 1e-12) {
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
      mx += lx[k];
      my += ly[k];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
      sxy += (lx[k] - mx) * (ly[k] - my);
      sxx += (lx[k] - mx) * (lx[k] - mx);
    }
    out.exponent = sxy / sxx;
  }
  return out;
}

}  // namespace efimov
