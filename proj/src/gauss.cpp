#include "efimov/gauss.hpp"

#include <algorithm>
#include <boost/math/special_functions/legendre.hpp>
#include <stdexcept>

namespace efimov {

GaussRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
  // Non-negative zeros of P_n, ascending.
  const auto zeros = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> x, w;
  for (double r : zeros) {
    const double d = boost::math::legendre_p_prime(n, r);
    const double wr = 2.0 / ((1.0 - r * r) * d * d);
    x.push_back(r);
    w.push_back(wr);
    if (r != 0.0) {
      x.push_back(-r);
      w.push_back(wr);
    }
  }
  std::vector<std::size_t> order(x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return x[i] < x[j]; });

  GaussRule out;
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (auto i : order) {
    out.nodes.push_back(mid + half * x[i]);
    out.weights.push_back(half * w[i]);
  }
  return out;
}

}  // namespace efimov
