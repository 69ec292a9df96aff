#include "efimov/torus.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace efimov {

double wrap_angle(double x) {
  if (x > -kPi && x <= kPi) return x;
  double r = std::fmod(x + kPi, kTwoPi);
  if (r <= 0.0) r += kTwoPi;
  return r - kPi;
}

TorusPoint::TorusPoint(double a, double b, double c)
    : x_{wrap_angle(a), wrap_angle(b), wrap_angle(c)} {}

double TorusPoint::norm() const { return std::sqrt(dot(*this)); }

double TorusPoint::dot(const TorusPoint& o) const {
  return x_[0] * o.x_[0] + x_[1] * o.x_[1] + x_[2] * o.x_[2];
}

TorusPoint operator+(const TorusPoint& a, const TorusPoint& b) {
  return {a.x_[0] + b.x_[0], a.x_[1] + b.x_[1], a.x_[2] + b.x_[2]};
}

TorusPoint operator-(const TorusPoint& a, const TorusPoint& b) {
  return {a.x_[0] - b.x_[0], a.x_[1] - b.x_[1], a.x_[2] - b.x_[2]};
}

TorusPoint operator-(const TorusPoint& a) { return {-a.x_[0], -a.x_[1], -a.x_[2]}; }

TorusPoint operator*(double s, const TorusPoint& a) {
  return {s * a.x_[0], s * a.x_[1], s * a.x_[2]};
}

std::string TorusPoint::str() const {
  std::ostringstream os;
  os.precision(17);
  os << "(" << x_[0] << ", " << x_[1] << ", " << x_[2] << ")";
  return os.str();
}

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
  return (a - b).norm();
}

LatticeOrder::LatticeOrder(int m, bool allow_n1_regime) : m_(m) {
  if (m < 1) throw std::invalid_argument("lattice order m must be a positive integer");
  if (m < 3 && !allow_n1_regime)
    throw std::invalid_argument("m = " + std::to_string(m) +
                                " is the n=1 regime; enable diagnostics mode to use it");
}

// ---------------------------------------------------------------------------

CosineSeries::CosineSeries(std::vector<CosineTerm> terms) {
  std::map<std::array<int, 3>, double> merged;
  for (auto t : terms) {
    for (auto& k : t.k) k = std::abs(k);
    merged[t.k] += t.c;
  }
  for (const auto& [k, c] : merged)
    if (c != 0.0) terms_.push_back({k, c});
}

CosineSeries CosineSeries::constant(double c) { return CosineSeries({{{0, 0, 0}, c}}); }

double CosineSeries::eval(const std::array<double, 3>& q) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    double v = t.c;
    for (int j = 0; j < 3; ++j)
      if (t.k[j] != 0) v *= std::cos(t.k[j] * q[j]);
    s += v;
  }
  return s;
}

double CosineSeries::operator()(const TorusPoint& q) const { return eval(q.coords()); }

CosineSeries CosineSeries::operator*(const CosineSeries& other) const {
  // cos a cos b = (cos(a + b) + cos(a - b)) / 2, axis by axis.
  std::vector<CosineTerm> out;
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      std::vector<CosineTerm> partial{{{0, 0, 0}, a.c * b.c}};
      for (int j = 0; j < 3; ++j) {
        std::vector<CosineTerm> next;
        for (auto t : partial) {
          if (a.k[j] == 0 || b.k[j] == 0) {
            t.k[j] = a.k[j] + b.k[j];
            next.push_back(t);
          } else {
            auto u = t;
            t.k[j] = a.k[j] + b.k[j];
            t.c *= 0.5;
            u.k[j] = a.k[j] - b.k[j];
            u.c *= 0.5;
            next.push_back(t);
            next.push_back(u);
          }
        }
        partial = std::move(next);
      }
      out.insert(out.end(), partial.begin(), partial.end());
    }
  }
  return CosineSeries(std::move(out));
}

CosineSeries CosineSeries::scaled(double s) const {
  auto t = terms_;
  for (auto& x : t) x.c *= s;
  return CosineSeries(std::move(t));
}

double eval_phi(const CosineSeries& series, const TorusPoint& q) { return series(q); }

CosineSeries folded(const CosineSeries& s, int m) {
  std::vector<CosineTerm> out;
  for (auto t : s.terms()) {
    if (t.k[0] % m || t.k[1] % m || t.k[2] % m) continue;
    for (auto& k : t.k) k /= m;
    out.push_back(t);
  }
  return CosineSeries(std::move(out));
}

namespace presets {
CosineSeries constant_one() { return CosineSeries::constant(1.0); }
CosineSeries half_plus_cos1() { return CosineSeries({{{0, 0, 0}, 0.5}, {{1, 0, 0}, 1.0}}); }
CosineSeries half_plus_cos12() {
  return half_plus_cos1() * CosineSeries({{{0, 0, 0}, 0.5}, {{0, 1, 0}, 1.0}});
}
}  // namespace presets

// ---------------------------------------------------------------------------

double dispersion(const LatticeOrder& m, const TorusPoint& p) {
  const double mm = m.value();
  return (1.0 - std::cos(mm * p[0])) + (1.0 - std::cos(mm * p[1])) +
         (1.0 - std::cos(mm * p[2]));
}

double pair_energy(const LatticeOrder& m, const TorusPoint& p, const TorusPoint& q) {
  return dispersion(m, p) + dispersion(m, p + q) + dispersion(m, q);
}

double max_pair_energy(const LatticeOrder& m) {
  // w separates over the axes: sum_j f(p_j, q_j).
  const double mm = m.value();
  auto f = [&](double a, double b) {
    return 3.0 - std::cos(mm * a) - std::cos(mm * b) - std::cos(mm * (a + b));
  };
  constexpr int kGrid = 12;
  const double h = kTwoPi / kGrid;
  std::array<double, 6> best{};
  double best_w = -1.0;
  std::array<double, kGrid> ax{};
  for (int i = 0; i < kGrid; ++i) ax[i] = -kPi + i * h;
  for (double p0 : ax)
    for (double p1 : ax)
      for (double p2 : ax)
        for (double q0 : ax)
          for (double q1 : ax)
            for (double q2 : ax) {
              const double w = f(p0, q0) + f(p1, q1) + f(p2, q2);
              if (w > best_w) {
                best_w = w;
                best = {p0, p1, p2, q0, q1, q2};
              }
            }
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double span = h;
  for (int sweep = 0; sweep < 60; ++sweep) {
    for (int c = 0; c < 6; ++c) {
      const int axis = c % 3;
      auto value = [&](double x) {
        auto y = best;
        y[c] = x;
        return f(y[axis], y[axis + 3]);
      };
      double a = best[c] - span, b = best[c] + span;
      for (int it = 0; it < 100 && b - a > 1e-12; ++it) {
        const double x1 = b - g * (b - a), x2 = a + g * (b - a);
        if (value(x1) > value(x2))
          b = x2;
        else
          a = x1;
      }
      best[c] = 0.5 * (a + b);
    }
    span = std::max(0.5 * span, 1e-6);
  }
  return f(best[0], best[3]) + f(best[1], best[4]) + f(best[2], best[5]);
}

MinimaPair MinimaSet::pair(std::size_t i) const {
  if (i >= points.size()) throw std::out_of_range("minimum index out of range");
  return {points[i], points[i]};
}

std::vector<MinimaPair> MinimaSet::all_pairs() const {
  std::vector<MinimaPair> out;
  out.reserve(points.size() * points.size());
  for (const auto& q : points)
    for (const auto& p : points) out.push_back({p, q});
  return out;
}

double MinimaSet::resonant_phi2_sum() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_resonant; ++i) s += phi_values[i] * phi_values[i];
  return s;
}

namespace {

constexpr double kHessianStep = 1e-4;

Eigen::Matrix3d dispersion_hessian(const LatticeOrder& m, const TorusPoint& p) {
  const double h = kHessianStep;
  Eigen::Matrix3d hess;
  auto e = [&](int i, double di, int j, double dj) {
    std::array<double, 3> x = p.coords();
    x[i] += di;
    x[j] += dj;
    return dispersion(m, TorusPoint(x[0], x[1], x[2]));
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      hess(i, j) = (e(i, h, j, h) - e(i, h, j, -h) - e(i, -h, j, h) + e(i, -h, j, -h)) /
                   (4.0 * h * h);
  return hess;
}

Eigen::Matrix<double, 6, 6> pair_hessian(const LatticeOrder& m, const TorusPoint& p,
                                         const TorusPoint& q) {
  const double h = kHessianStep;
  std::array<double, 6> base{p[0], p[1], p[2], q[0], q[1], q[2]};
  auto w = [&](int i, double di, int j, double dj) {
    auto x = base;
    x[i] += di;
    x[j] += dj;
    return pair_energy(m, TorusPoint(x[0], x[1], x[2]), TorusPoint(x[3], x[4], x[5]));
  };
  Eigen::Matrix<double, 6, 6> hess;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      hess(i, j) = (w(i, h, j, h) - w(i, h, j, -h) - w(i, -h, j, h) + w(i, -h, j, -h)) /
                   (4.0 * h * h);
  return hess;
}

template <class M>
bool positive_definite(const M& a) {
  Eigen::SelfAdjointEigenSolver<M> es(0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > 0.0;
}

}  // namespace

MinimaSet enumerate_minima(const LatticeOrder& m, const CosineSeries& phi, double zero_tol) {
  if (!(zero_tol > 0.0)) throw std::invalid_argument("zero_tol must be positive");
  const int mm = m.value();

  // Per axis: every angle with m x = 0 mod 2 pi, reduced into (-pi, pi].
  std::vector<double> axis;
  for (int k = 0; k < mm; ++k) axis.push_back(wrap_angle(kTwoPi * k / mm));
  std::sort(axis.begin(), axis.end());

  struct Candidate {
    TorusPoint p;
    double phi;
    double origin_dist;
  };
  std::vector<Candidate> cand;
  for (double a : axis)
    for (double b : axis)
      for (double c : axis) {
        TorusPoint p(a, b, c);
        if (dispersion(m, p) > 1e-14)
          throw std::logic_error("dispersion does not vanish at candidate minimum " + p.str());
        if (!positive_definite(dispersion_hessian(m, p)))
          throw std::logic_error("degenerate minimum of the dispersion at " + p.str());
        cand.push_back({p, phi(p), p.norm()});
      }

  std::stable_sort(cand.begin(), cand.end(), [&](const Candidate& x, const Candidate& y) {
    const bool rx = std::abs(x.phi) > zero_tol, ry = std::abs(y.phi) > zero_tol;
    if (rx != ry) return rx;
    return x.origin_dist < y.origin_dist;
  });

  MinimaSet out;
  out.m = mm;
  out.m_prime = (mm % 2 == 0) ? mm - 2 : mm - 1;
  out.zero_tol = zero_tol;
  for (const auto& c : cand) {
    out.points.push_back(c.p);
    out.phi_values.push_back(c.phi);
    if (std::abs(c.phi) > zero_tol) ++out.n_resonant;
  }
  out.n_pairs = out.points.size() * out.points.size();
  const std::size_t base = static_cast<std::size_t>(out.m_prime + 1);
  out.n_formula = base * base * base * base * base * base;
  out.formula_discrepancy = out.n_formula != out.n_pairs;

  for (const auto& pr : out.all_pairs())
    if (!positive_definite(pair_hessian(m, pr.p, pr.q)))
      throw std::logic_error("degenerate minimum of the pair energy at " + pr.p.str() +
                             " x " + pr.q.str());

  if (out.n_resonant == 0)
    throw std::invalid_argument("phi vanishes at every minimum; resonance analysis undefined");
  if (out.n_resonant == 1 && out.n_pairs == 1)
    throw std::invalid_argument("single-minimum configuration (n = 1); the analysis needs n > 1");
  return out;
}

}  // namespace efimov
