#include "efimov/linalg.hpp"

#include <lapacke.h>

#include <sstream>
#include <stdexcept>
#include <vector>

#include "efimov/diagnostics.hpp"

namespace efimov {

Inertia inertia(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inertia needs a square matrix");
  const auto n = static_cast<lapack_int>(a.rows());
  Inertia out;
  if (n == 0) return out;
  Eigen::MatrixXd f = a;  // column-major, lower triangle is used
  std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, f.data(), n, ipiv.data());
  if (info < 0) throw std::runtime_error("dsytrf: illegal argument");
  // info > 0 means an exactly singular D block; the inertia is still valid.
  for (lapack_int k = 0; k < n;) {
    if (ipiv[static_cast<std::size_t>(k)] > 0) {
      const double d = f(k, k);
      if (d > 0) ++out.positive;
      else if (d < 0) ++out.negative;
      else ++out.zero;
      ++k;
    } else {
      // 2x2 block [[a, b], [b, c]]
      const double p = f(k, k), b = f(k + 1, k), c = f(k + 1, k + 1);
      const double det = p * c - b * b;
      if (det < 0) {
        ++out.positive;
        ++out.negative;
      } else if (det > 0) {
        if (p + c > 0) out.positive += 2;
        else out.negative += 2;
      } else {
        ++out.zero;
        if (p + c > 0) ++out.positive;
        else if (p + c < 0) ++out.negative;
        else ++out.zero;
      }
      k += 2;
    }
  }
  return out;
}

namespace {

std::size_t count_by_inertia(const Eigen::MatrixXd& a, double lambda) {
  Eigen::MatrixXd s = a;
  s.diagonal().array() -= lambda;
  return inertia(s).positive;
}

void unstable_warning(double lambda) {
  std::ostringstream os;
  os << "count unstable at this lambda (" << lambda << ")";
  warn(os.str());
}

}  // namespace

std::size_t count_above(const Eigen::MatrixXd& a, double lambda, CountMethod method) {
  if (a.rows() != a.cols()) throw std::invalid_argument("count_above needs a square matrix");
  const auto n = static_cast<std::size_t>(a.rows());
  if (method == CountMethod::kAuto)
    method = n <= kDualRouteLimit ? CountMethod::kBoth : CountMethod::kInertia;

  std::size_t by_eig = 0, by_inertia = 0;
  bool close = false;
  if (method == CountMethod::kEigen || method == CountMethod::kBoth) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const double ev = es.eigenvalues()(i);
      if (ev > lambda) ++by_eig;
      if (std::abs(ev - lambda) <= kCountUnstableBand) close = true;
    }
    if (close) unstable_warning(lambda);
    if (method == CountMethod::kEigen) return by_eig;
  }
  by_inertia = count_by_inertia(a, lambda);
  if (method == CountMethod::kInertia) {
    const std::size_t lo = count_by_inertia(a, lambda - kCountUnstableBand);
    const std::size_t hi = count_by_inertia(a, lambda + kCountUnstableBand);
    if (lo != hi) unstable_warning(lambda);
    return by_inertia;
  }
  if (by_eig != by_inertia) {
    if (close) return by_eig;  // tie inside the warning band; already reported
    std::ostringstream os;
    os << "inertia count " << by_inertia << " disagrees with eigenvalue count " << by_eig;
    throw std::runtime_error(os.str());
  }
  return by_inertia;
}

double symmetry_defect(const Eigen::MatrixXd& a) {
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace efimov
