#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qrabi/errors.hpp"
#include "qrabi/model.hpp"

namespace qrabi {

/// Real symmetric tridiagonal matrix for one (q, parity) sector of the
/// truncated Hamiltonian.
struct TridiagonalMatrix {
  std::vector<double> diag;     // d_0 .. d_N
  std::vector<double> offdiag;  // o_0 .. o_{N-1}
  ModelFamily family = ModelFamily::TwoMode;
  BargmannQ q{2};
  Parity parity = Parity::Plus;

  int size() const { return static_cast<int>(diag.size()); }
};

namespace detail {

inline double pivmin_of(const TridiagonalMatrix& m) {
  double max_off_sq = 0.0;
  for (double o : m.offdiag) max_off_sq = std::max(max_off_sq, o * o);
  return std::numeric_limits<double>::min() * std::max(1.0, max_off_sq);
}

inline void gershgorin_bounds(const TridiagonalMatrix& m, double& lo, double& hi) {
  int n = m.size();
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (int i = 0; i < n; ++i) {
    double r = (i > 0 ? std::abs(m.offdiag[i - 1]) : 0.0) +
               (i + 1 < n ? std::abs(m.offdiag[i]) : 0.0);
    lo = std::min(lo, m.diag[i] - r);
    hi = std::max(hi, m.diag[i] + r);
  }
  double pad = std::numeric_limits<double>::epsilon() *
               std::max({std::abs(lo), std::abs(hi), 1.0});
  lo -= 2.0 * n * pad;
  hi += 2.0 * n * pad;
}

}  // namespace detail

/// Number of eigenvalues strictly below lambda, from the signs of the
/// LDL^T pivots (Sturm sequence). Pivots are clamped away from zero so the
/// count is defined for every lambda.
inline int sturm_count(const TridiagonalMatrix& m, double lambda) {
  double pivmin = detail::pivmin_of(m);
  int count = 0;
  double d = m.diag[0] - lambda;
  if (std::abs(d) < pivmin) d = -pivmin;
  if (d < 0.0) ++count;
  for (int i = 1; i < m.size(); ++i) {
    d = (m.diag[i] - lambda) - m.offdiag[i - 1] * m.offdiag[i - 1] / d;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

/// k smallest eigenvalues in ascending order, each located by bisection on
/// the Sturm count. Unconditionally convergent; accuracy is a small multiple
/// of machine epsilon times the matrix norm scale.
inline std::vector<double> eigenvalues_tridiagonal(const TridiagonalMatrix& m, int k) {
  if (k < 1 || k > m.size())
    throw Error("eigenvalue count k must be in [1, matrix size]");
  double glo, ghi;
  detail::gershgorin_bounds(m, glo, ghi);
  double scale = std::max({std::abs(glo), std::abs(ghi), 1.0});
  double tol = 2.0 * std::numeric_limits<double>::epsilon() * scale;

  std::vector<double> eig(k);
  for (int j = 0; j < k; ++j) {
    double lo = glo, hi = ghi;
    // invariant: count(lo) <= j < count(hi)
    while (hi - lo > tol) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (sturm_count(m, mid) > j)
        hi = mid;
      else
        lo = mid;
    }
    eig[j] = 0.5 * (lo + hi);
  }
  return eig;
}

}  // namespace qrabi
