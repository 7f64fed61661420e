#pragma once

#include <cmath>
#include <vector>

#include "qrabi/recurrence.hpp"
#include "qrabi/summation.hpp"

namespace qrabi {

/// One evaluation of the pair G_plus(x), G_minus(x). Both parities come from
/// a single recurrence pass over the shared coefficient sequence.
struct GEvaluation {
  double x = 0.0;
  double value_plus = 0.0;
  double value_minus = 0.0;
  int n_terms_used = 0;
  double tail_estimate = 0.0;
  long nearest_pole = 0;
  double pole_distance = 0.0;
};

/// G_pm(x) = sum_n t_n * [1 +- delta/(F(g)(n-x))] with F(g) = 2 beta.
/// Summation runs in ascending n with compensated accumulation; the tails
/// near the collapse point are long and decay only like 1/(1+beta) per term.
inline GEvaluation eval_g(const ModelParams& p, BargmannQ q, double x,
                          const SeriesControls& ctl = {}) {
  CoefficientSequence seq = scaled_terms(p, q, x, ctl);
  double f_scale = 2.0 * squeeze_beta(p);

  GEvaluation ev;
  ev.x = x;
  ev.n_terms_used = static_cast<int>(seq.terms.size());
  ev.pole_distance = detail::pole_distance(x, &ev.nearest_pole);

  CompensatedSum plus, minus;
  for (int n = 0; n < static_cast<int>(seq.terms.size()); ++n) {
    double w = p.delta / (f_scale * (n - x));
    plus.add(seq.terms[n] * (1.0 + w));
    minus.add(seq.terms[n] * (1.0 - w));
  }
  ev.value_plus = plus.value();
  ev.value_minus = minus.value();

  // Geometric bound on the truncated tail: |t_{n+1}/t_n| -> 1/(1+beta).
  double r = 1.0 / (1.0 + squeeze_beta(p));
  ev.tail_estimate = std::abs(seq.terms.back()) * r / (1.0 - r);
  return ev;
}

/// Branch value for one parity label.
inline double eval_g_branch(const ModelParams& p, BargmannQ q, Parity branch,
                            double x, const SeriesControls& ctl = {}) {
  GEvaluation ev = eval_g(p, q, x, ctl);
  return branch == Parity::Plus ? ev.value_plus : ev.value_minus;
}

/// Poles of G_pm in the open interval (x_lo, x_hi): the nonnegative integers.
inline std::vector<long> pole_positions(double x_lo, double x_hi) {
  std::vector<long> poles;
  if (!(x_lo < x_hi)) throw Error("pole_positions requires x_lo < x_hi");
  long first = static_cast<long>(std::floor(x_lo)) + 1;
  if (first < 0) first = 0;
  for (long n = first; n < x_hi; ++n)
    if (static_cast<double>(n) > x_lo) poles.push_back(n);
  return poles;
}

}  // namespace qrabi
