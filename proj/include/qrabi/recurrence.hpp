#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qrabi/controls.hpp"
#include "qrabi/errors.hpp"
#include "qrabi/model.hpp"

namespace qrabi {

namespace detail {

/// Distance from x to the nearest pole of the spectral function
/// (poles sit at the nonnegative integers; below zero the nearest is 0).
inline double pole_distance(double x, long* nearest = nullptr) {
  long n = std::lround(x);
  if (n < 0) n = 0;
  if (nearest) *nearest = n;
  return std::abs(x - static_cast<double>(n));
}

inline void require_pole_clearance(double x, double guard) {
  long n = 0;
  if (pole_distance(x, &n) < guard) throw PoleProximity(x, n);
}

/// Per-family data for one recurrence step. The scaled coefficients fold the
/// basis-overlap weight ratio into the step so no factorial is ever formed:
///   t_{n+1} = scaled_a * t_n - scaled_b * t_{n-1}.
struct StepCoefficients {
  double a;         // raw step: f_{n+1} = a f_n - b f_{n-1}
  double b;
  double scaled_a;  // weight-folded step for t_n = f_n * L_n
  double scaled_b;
};

inline StepCoefficients step(const ModelParams& p, double q, double beta, int n,
                             double x) {
  double ge2 = effective_coupling(p) * effective_coupling(p);
  double beta2 = 1.0 - ge2;
  double one_minus_beta = ge2 / (1.0 + beta);
  // (squeeze ratio)/g, algebraically 1/(1+beta) for g > 0. At g = 0 the
  // ratio vanishes exactly, so every weighted term beyond t_0 is zero.
  double fold = p.g > 0.0 ? 1.0 / (1.0 + beta) : 0.0;
  double numer, denom_a, denom_b, qn;
  if (p.family == ModelFamily::TwoMode) {
    numer = (1.0 + p.g * p.g) * (n + q) - beta2 * (q + x) +
            p.delta * p.delta / (4.0 * (x - n));
    denom_a = p.g * (n + 1.0) * (n + 2.0 * q);
    denom_b = (n + 1.0) * (n + 2.0 * q);
    qn = (n + 2.0 * q - 1.0) * one_minus_beta / ((1.0 + beta) * (n + 1.0));
  } else {
    numer = (1.0 + 4.0 * p.g * p.g) * (n + q) - beta2 * (x + q) +
            p.delta * p.delta / (4.0 * (x - n));
    denom_a = 4.0 * p.g * (n + q + 0.75) * (n + q + 0.25);
    denom_b = 4.0 * (n + q + 0.75) * (n + q + 0.25);
    qn = n == 0 ? 0.0
                : (n + q - 0.25) * (n + q - 0.75) * one_minus_beta /
                      ((1.0 + beta) * n * (n + 1.0));
  }
  double pn = numer * fold / (n + 1.0);
  return StepCoefficients{numer / denom_a, 1.0 / denom_b, pn, qn};
}

}  // namespace detail

/// Scaled summands t_n = f_n * L_n of the spectral series, with truncation
/// metadata. The entries are deterministic for fixed inputs.
struct CoefficientSequence {
  double x = 0.0;
  std::vector<double> terms;   // t_0 .. t_{n_max}
  std::vector<double> raw_f;   // f_n for small n (empty when g == 0)
  int n_max = 0;               // index of the last retained term
  bool converged = false;
  double min_pole_distance = 0.0;
};

/// Forward solution f_0..f_{n_max} of the three-term recurrence with
/// f_{-1} = 0, f_0 = 1 (the normalization r_b := 1). No minimal-solution
/// filtering: the spectral function is built from exactly this solution.
inline std::vector<double> coefficient_sequence(const ModelParams& p, BargmannQ q,
                                                double x, int n_max,
                                                double pole_guard = 1e-6) {
  validate(p);
  validate(p.family, q);
  if (p.delta == 0.0) throw DeltaZero();
  if (p.g == 0.0)
    throw CouplingOutOfRange("unscaled recurrence is singular at g=0; use scaled_terms");
  long nearest = 0;
  double dist = detail::pole_distance(x, &nearest);
  if (nearest <= n_max && dist < pole_guard) throw PoleProximity(x, nearest);

  double beta = squeeze_beta(p);
  double qv = q.value();
  std::vector<double> f(static_cast<std::size_t>(n_max) + 1);
  f[0] = 1.0;
  double prev = 0.0;
  for (int n = 0; n < n_max; ++n) {
    auto c = detail::step(p, qv, beta, n, x);
    double next = c.a * f[n] - c.b * prev;
    prev = f[n];
    f[n + 1] = next;
  }
  return f;
}

/// Coefficient of the qubit-flipped spinor component belonging to f_n:
///   delta * f_n / (2 beta (n - x)),
/// the x-space form of delta * f_n / (2 beta (n+q) - offset - E).
inline double partner_coefficient(const ModelParams& p, BargmannQ q, double x,
                                  double f_n, int n, double pole_guard = 1e-6) {
  validate(p);
  validate(p.family, q);
  if (std::abs(x - n) < pole_guard) throw PoleProximity(x, n);
  return p.delta * f_n / (2.0 * squeeze_beta(p) * (n - x));
}

/// Basis-overlap weight L_n multiplying f_n in the spectral series.
/// Forms the factorials explicitly, so it is meant for small n (tests,
/// cross-checks); the production path never calls it.
inline double series_weight(const ModelParams& p, BargmannQ q, int n) {
  auto bg = bogoliubov(p);
  double qv = q.value();
  if (p.family == ModelFamily::TwoMode)
    return std::tgamma(n + 2.0 * qv) * std::pow(bg.ratio, n);
  return std::tgamma(2.0 * (n + qv - 0.25) + 1.0) / std::tgamma(n + 1.0) *
         std::pow(bg.ratio / 2.0, n);
}

/// Runs the weight-folded recurrence t_{n+1} = a~ t_n - b~ t_{n-1} with
/// t_0 = L_0 and stops once |t_n| stays below eps_tail * max|t_k| for
/// tail_window consecutive terms. Also retains the raw f_n for small n
/// where they are representable.
inline CoefficientSequence scaled_terms(const ModelParams& p, BargmannQ q, double x,
                                        const SeriesControls& ctl = {}) {
  validate(p);
  validate(p.family, q);
  if (p.delta == 0.0) throw DeltaZero();
  detail::require_pole_clearance(x, ctl.pole_guard);

  double beta = squeeze_beta(p);
  double qv = q.value();

  CoefficientSequence seq;
  seq.x = x;
  seq.min_pole_distance = detail::pole_distance(x);
  seq.terms.reserve(128);
  seq.terms.push_back(p.family == ModelFamily::TwoMode ? std::tgamma(2.0 * qv) : 1.0);

  constexpr int kRawKeep = 32;
  if (p.g > 0.0) {
    seq.raw_f.reserve(kRawKeep + 1);
    seq.raw_f.push_back(1.0);
  }

  double t_prev = 0.0;
  double t = seq.terms[0];
  double t_max = std::abs(t);
  int below = 0;
  for (int n = 0; n < ctl.n_max_hard; ++n) {
    auto c = detail::step(p, qv, beta, n, x);
    double t_next = c.scaled_a * t - c.scaled_b * t_prev;
    if (!std::isfinite(t_next))
      throw NoConvergence("series term not finite at n=" + std::to_string(n + 1));
    t_prev = t;
    t = t_next;
    seq.terms.push_back(t);
    if (p.g > 0.0 && n < kRawKeep &&
        seq.raw_f.size() == static_cast<std::size_t>(n) + 1) {
      double f_next = c.a * seq.raw_f[n] - c.b * (n > 0 ? seq.raw_f[n - 1] : 0.0);
      if (std::isfinite(f_next))
        seq.raw_f.push_back(f_next);
    }
    t_max = std::max(t_max, std::abs(t));
    if (std::abs(t) < ctl.eps_tail * t_max) {
      if (++below >= ctl.tail_window) {
        seq.converged = true;
        break;
      }
    } else {
      below = 0;
    }
  }
  seq.n_max = static_cast<int>(seq.terms.size()) - 1;
  if (!seq.converged)
    throw NoConvergence("series tail criterion not met within n_max_hard=" +
                        std::to_string(ctl.n_max_hard));
  return seq;
}

}  // namespace qrabi
