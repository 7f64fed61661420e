#pragma once

// Test-only dense symmetric eigensolver (cyclic Jacobi). Used as an
// independent oracle for the sector-splitting checks; deliberately not part
// of the library.

#include <algorithm>
#include <cmath>
#include <vector>

namespace qrabi_test {

class DenseSymmetric {
 public:
  explicit DenseSymmetric(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  int size() const { return n_; }

 private:
  int n_;
  std::vector<double> a_;
};

inline std::vector<double> jacobi_eigenvalues(DenseSymmetric m) {
  int n = m.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += m.at(i, j) * m.at(i, j);
    if (off < 1e-26) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (m.at(p, q) == 0.0) continue;
        double theta = 0.5 * std::atan2(2.0 * m.at(p, q), m.at(q, q) - m.at(p, p));
        double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < n; ++k) {
          double akp = m.at(k, p), akq = m.at(k, q);
          m.at(k, p) = c * akp - s * akq;
          m.at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = m.at(p, k), aqk = m.at(q, k);
          m.at(p, k) = c * apk - s * aqk;
          m.at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = m.at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace qrabi_test
