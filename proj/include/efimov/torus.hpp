#pragma once

// Geometry of the three-torus (-pi, pi]^3, the lattice dispersion and pair
// energy, the even coupling function, and the census of minima of the pair
// energy.

#include <array>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

namespace efimov {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle into (-pi, pi]. Values already in range are returned
/// unchanged (bitwise), which several matched-grid identities rely on.
double wrap_angle(double x);

class TorusPoint {
 public:
  TorusPoint() = default;
  TorusPoint(double a, double b, double c);

  double operator[](std::size_t i) const { return x_[i]; }
  const std::array<double, 3>& coords() const { return x_; }

  /// Euclidean length of the reduced coordinates, i.e. the torus distance
  /// to the origin.
  double norm() const;
  double dot(const TorusPoint& other) const;

  friend TorusPoint operator+(const TorusPoint& a, const TorusPoint& b);
  friend TorusPoint operator-(const TorusPoint& a, const TorusPoint& b);
  friend TorusPoint operator-(const TorusPoint& a);
  friend TorusPoint operator*(double s, const TorusPoint& a);
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

  std::string str() const;

 private:
  std::array<double, 3> x_{0.0, 0.0, 0.0};
};

double torus_distance(const TorusPoint& a, const TorusPoint& b);

/// Integer m of the dispersion 1 - cos(m p). Values m = 1, 2 put the model
/// in the degenerate single-minimum regime and are only accepted when
/// explicitly requested for diagnostics.
class LatticeOrder {
 public:
  explicit LatticeOrder(int m, bool allow_n1_regime = false);

  int value() const { return m_; }
  bool n1_regime() const { return m_ < 3; }

 private:
  int m_;
};

struct CosineTerm {
  std::array<int, 3> k{0, 0, 0};
  double c = 0.0;
};

/// phi(q) = sum_k c_k cos(k1 q1) cos(k2 q2) cos(k3 q3). Even by
/// construction; multi-indices are stored with non-negative entries, merged
/// and sorted.
class CosineSeries {
 public:
  CosineSeries() = default;
  explicit CosineSeries(std::vector<CosineTerm> terms);

  static CosineSeries constant(double c);

  double operator()(const TorusPoint& q) const;
  double eval(const std::array<double, 3>& q) const;

  CosineSeries operator*(const CosineSeries& other) const;
  CosineSeries scaled(double s) const;

  const std::vector<CosineTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

 private:
  std::vector<CosineTerm> terms_;
};

double eval_phi(const CosineSeries& series, const TorusPoint& q);

/// Average of s((v + 2 pi a) / m) over a in {0..m-1}^3, as a series in v:
/// the terms whose multi-index is divisible by m, with k replaced by k / m.
CosineSeries folded(const CosineSeries& s, int m);

namespace presets {
/// phi = 1.
CosineSeries constant_one();
/// phi = 1/2 + cos q1, vanishing where q1 = +-2pi/3.
CosineSeries half_plus_cos1();
/// phi = (1/2 + cos q1)(1/2 + cos q2).
CosineSeries half_plus_cos12();
}  // namespace presets

/// epsilon(p) = sum_j (1 - cos(m p_j)).
double dispersion(const LatticeOrder& m, const TorusPoint& p);
/// w(p, q) = epsilon(p) + epsilon(p + q) + epsilon(q).
double pair_energy(const LatticeOrder& m, const TorusPoint& p,
                   const TorusPoint& q);

/// Numerical maximum of w over the torus squared: a 12^6 grid search
/// followed by coordinate-wise golden-section refinement.
double max_pair_energy(const LatticeOrder& m);

struct MinimaPair {
  TorusPoint p;
  TorusPoint q;
};

/// Minima of the pair energy. `points` are the per-torus minima of epsilon,
/// ordered so that the points where phi does not vanish come first (the
/// origin leads whenever it is one of them). Every ordered pair of points
/// is a minimum of w.
struct MinimaSet {
  int m = 0;
  int m_prime = 0;
  std::vector<TorusPoint> points;
  std::vector<double> phi_values;
  std::size_t n_resonant = 0;   // count of points with |phi| > zero_tol
  std::size_t n_pairs = 0;      // brute-force count of minima pairs of w
  std::size_t n_formula = 0;    // (m' + 1)^6
  bool formula_discrepancy = false;
  double zero_tol = 1e-12;

  std::size_t points_per_torus() const { return points.size(); }
  bool is_resonant(std::size_t i) const { return i < n_resonant; }
  /// The i-th localized pair (p_{s_i}, q_{s_i}); both members are points[i].
  MinimaPair pair(std::size_t i) const;
  /// All n_pairs pairs, grouped by the q-point in `points` order.
  std::vector<MinimaPair> all_pairs() const;
  /// Sum of phi^2 over the resonant points.
  double resonant_phi2_sum() const;
};

MinimaSet enumerate_minima(const LatticeOrder& m, const CosineSeries& phi,
                           double zero_tol = 1e-12);

}  // namespace efimov
