#include "efimov/bs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace efimov {

namespace {

void check_z(double z) {
  if (!(z < 0.0) || !std::isfinite(z)) throw std::invalid_argument("z must be negative");
}

void check_delta(const std::vector<double>& delta, const TorusGrid& grid,
                 const std::vector<std::size_t>* rep = nullptr) {
  for (std::size_t i = 0; i < delta.size(); ++i)
    if (!(delta[i] > 0.0)) {
      std::ostringstream os;
      os << "z not below two-particle branch for this mu (Delta=" << delta[i] << " at node "
         << grid.node(rep ? (*rep)[i] : i).str() << ")";
      throw std::domain_error(os.str());
    }
}

}  // namespace

std::vector<double> grid_delta(const GridFields& fields, double mu, double z) {
  const std::size_t g = fields.size();
  const double wt = fields.weight();
  std::vector<double> out(g);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < g; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < g; ++k) s += fields.phi2(k) / (fields.w(i, k) - z);
    out[i] = 1.0 - mu * wt * s;
  }
  return out;
}

KernelMatrix assemble_bs(const ModelParams& params, const TorusGrid& grid, double z,
                         std::span<const std::size_t> order) {
  check_z(z);
  const GridFields fields(params.m, params.phi, grid);
  const std::size_t g = fields.size();
  std::vector<std::size_t> perm(g);
  if (order.empty()) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
  } else {
    if (order.size() != g) throw std::invalid_argument("node order has the wrong length");
    perm.assign(order.begin(), order.end());
    std::vector<char> seen(g, 0);
    for (auto i : perm) {
      if (i >= g || seen[i]) throw std::invalid_argument("node order is not a permutation");
      seen[i] = 1;
    }
  }
  const std::vector<double> delta = grid_delta(fields, params.mu, z);
  check_delta(delta, grid);

  KernelMatrix out;
  out.grid_n = grid.n();
  out.shift = grid.shift();
  out.z = z;
  out.mu = params.mu;
  out.a.resize(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(g));
  std::vector<double> s(g);
  for (std::size_t r = 0; r < g; ++r)
    s[r] = fields.phi(perm[r]) * std::sqrt(params.mu * fields.weight() / delta[perm[r]]);
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < g; ++c)
    for (std::size_t r = 0; r < g; ++r)
      out.a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          s[r] * s[c] / (fields.w(perm[r], perm[c]) - z);
  out.delta.resize(g);
  for (std::size_t r = 0; r < g; ++r) out.delta[r] = delta[perm[r]];
  return out;
}

KernelMatrix assemble_bs_serial(const ModelParams& params, const TorusGrid& grid, double z) {
  check_z(z);
  const GridFields fields(params.m, params.phi, grid);
  const std::size_t g = fields.size();
  const double wt = fields.weight();
  std::vector<double> delta(g);
  for (std::size_t i = 0; i < g; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < g; ++k) s += fields.phi2(k) / (fields.w(i, k) - z);
    delta[i] = 1.0 - params.mu * wt * s;
  }
  check_delta(delta, grid);

  KernelMatrix out;
  out.grid_n = grid.n();
  out.shift = grid.shift();
  out.z = z;
  out.mu = params.mu;
  out.a.resize(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(g));
  for (std::size_t c = 0; c < g; ++c) {
    const double sc = fields.phi(c) * std::sqrt(params.mu * wt / delta[c]);
    for (std::size_t r = 0; r < g; ++r) {
      const double sr = fields.phi(r) * std::sqrt(params.mu * wt / delta[r]);
      out.a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          sr * sc / (fields.w(r, c) - z);
    }
  }
  out.delta = std::move(delta);
  return out;
}

KernelMatrix assemble_bs_reduced(const ModelParams& params, const TorusGrid& grid, double z) {
  check_z(z);
  const int m = params.m.value();
  const int n = grid.n();
  if (n % m != 0) throw std::invalid_argument("reduced assembly needs m | N");
  const int nr = n / m;
  const auto nrs = static_cast<std::size_t>(nr);
  const std::size_t gr = nrs * nrs * nrs;
  const double mm = m;
  const auto& ax = grid.axis();

  // Per-axis tables on the class representatives j < N/m.
  std::vector<double> e1(nrs), e2(nrs * nrs);
  for (std::size_t a = 0; a < nrs; ++a) e1[a] = 1.0 - std::cos(mm * ax[a]);
  for (std::size_t a = 0; a < nrs; ++a)
    for (std::size_t b = 0; b < nrs; ++b) e2[a * nrs + b] = 1.0 - std::cos(mm * (ax[a] + ax[b]));

  // phi^2 summed over each class; the class of axis index j is j mod N/m.
  std::vector<double> phi2(gr, 0.0);
  std::vector<std::size_t> rep(gr);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto ij = grid.node_indices(i);
    const std::size_t c = (static_cast<std::size_t>(ij[0] % nr) * nrs + ij[1] % nr) * nrs +
                          static_cast<std::size_t>(ij[2] % nr);
    const double v = params.phi(grid.node(i));
    phi2[c] += v * v;
    if (ij[0] < nr && ij[1] < nr && ij[2] < nr) rep[c] = i;
  }
  std::vector<std::array<std::size_t, 3>> idx(gr);
  std::vector<double> eps(gr);
  for (std::size_t c = 0; c < gr; ++c) {
    idx[c] = {c / (nrs * nrs), (c / nrs) % nrs, c % nrs};
    eps[c] = e1[idx[c][0]] + e1[idx[c][1]] + e1[idx[c][2]];
  }
  auto w = [&](std::size_t i, std::size_t j) {
    return eps[i] + eps[j] +
           (e2[idx[i][0] * nrs + idx[j][0]] + e2[idx[i][1] * nrs + idx[j][1]] +
            e2[idx[i][2] * nrs + idx[j][2]]);
  };

  const double wt = grid.weight();
  std::vector<double> delta(gr);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < gr; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < gr; ++k) s += phi2[k] / (w(i, k) - z);
    delta[i] = 1.0 - params.mu * wt * s;
  }
  check_delta(delta, grid, &rep);

  KernelMatrix out;
  out.grid_n = n;
  out.shift = grid.shift();
  out.z = z;
  out.mu = params.mu;
  out.reduced = true;
  out.a.resize(static_cast<Eigen::Index>(gr), static_cast<Eigen::Index>(gr));
  std::vector<double> s(gr);
  for (std::size_t r = 0; r < gr; ++r) s[r] = std::sqrt(phi2[r] * params.mu * wt / delta[r]);
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < gr; ++c)
    for (std::size_t r = 0; r < gr; ++r)
      out.a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          s[r] * s[c] / (w(r, c) - z);
  out.delta = std::move(delta);
  return out;
}

std::size_t bs_count(const ModelParams& params, const TorusGrid& grid, double z,
                     CountMethod method) {
  if (grid.n() % params.m.value() == 0)
    return count_above(assemble_bs_reduced(params, grid, z).a, 1.0, method);
  if (grid.size() > kFullAssemblyLimit)
    throw std::invalid_argument("grid " + grid.describe() +
                                " too large for full assembly and not divisible by m");
  return count_above(assemble_bs(params, grid, z).a, 1.0, method);
}

// ---------------------------------------------------------------------------

int admissible_n(int n, int m) {
  const int step = (m % 2 == 1) ? 2 * m : m;
  return std::max(step, ((n + step - 1) / step) * step);
}

int policy_n(const GridPolicy& policy, double z, int m) {
  if (!policy.adaptive) return policy.n_fixed;
  check_z(z);
  const double raw = std::ceil(policy.c / std::sqrt(-z));
  const int n = static_cast<int>(std::min<double>(policy.n_max, raw));
  return admissible_n(n, m);
}

bool CountCurve::nonincreasing_as_z_decreases() const {
  std::vector<const CountPoint*> sorted;
  for (const auto& p : points) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(), [](auto a, auto b) { return a->z < b->z; });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i]->count < sorted[i - 1]->count) return false;
  return true;
}

CountCurve nz_curve(const ModelParams& params, std::span<const double> z_list,
                    const GridPolicy& policy) {
  const int m = params.m.value();
  CountCurve out;
  out.policy = policy;
  for (double z : z_list) {
    check_z(z);
    CountPoint pt;
    pt.z = z;
    pt.grid_n = policy_n(policy, z, m);
    pt.count = bs_count(params, standard_grid(pt.grid_n, params.m), z);
    pt.refined_n = policy.adaptive ? admissible_n(pt.grid_n + 4, m) : pt.grid_n + 4;
    pt.count_refined = bs_count(params, standard_grid(pt.refined_n, params.m), z);
    pt.saturated = pt.count_refined != pt.count;
    out.points.push_back(pt);
  }
  return out;
}

SlopeFit slope_fit(const CountCurve& curve, double z_min, double z_max) {
  if (!(z_min < z_max)) throw std::invalid_argument("fit window is empty");
  std::vector<double> x, y;
  SlopeFit out;
  out.z_min = z_min;
  out.z_max = z_max;
  std::size_t in_window = 0;
  for (const auto& p : curve.points) {
    if (p.z < z_min || p.z > z_max) continue;
    ++in_window;
    if (p.saturated) {
      ++out.dropped;
      continue;
    }
    x.push_back(std::abs(std::log(std::abs(p.z))));
    y.push_back(static_cast<double>(p.count));
  }
  if (in_window < 4) throw std::invalid_argument("slope fit needs at least 4 points in the window");
  if (x.size() < 2) throw std::runtime_error("window unresolvable at this grid");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::runtime_error("window unresolvable at this grid");
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - out.intercept - out.slope * x[i];
    r2 += r * r;
  }
  out.residual = std::sqrt(r2);
  out.used = x.size();
  return out;
}

}  // namespace efimov
