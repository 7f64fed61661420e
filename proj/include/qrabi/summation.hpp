#pragma once

#include <cmath>

namespace qrabi {

/// Neumaier-compensated accumulator. The series behind the spectral
/// functions decay slowly near the collapse point, so the running error
/// term is carried explicitly instead of trusting naive addition.
struct CompensatedSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double value) {
    double t = sum + value;
    if (std::abs(sum) >= std::abs(value))
      compensation += (sum - t) + value;
    else
      compensation += (value - t) + sum;
    sum = t;
  }

  double value() const { return sum + compensation; }
};

}  // namespace qrabi
