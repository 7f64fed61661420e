#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "qrabi/ed.hpp"
#include "qrabi/gfunction.hpp"
#include "qrabi/solver.hpp"

namespace qrabi {

/// A doubly degenerate (parity-crossing) level: the pole of G_pm at x=n is
/// lifted because f_n(n) vanishes, at coupling g_star (for fixed delta) or
/// splitting delta_star (for fixed g).
struct ExceptionalPoint {
  int n = 1;
  BargmannQ q{2};
  double g_star = 0.0;
  double delta_star = 0.0;
  double energy = 0.0;    // 2 beta (n+q) - offset at the solved parameter
  double residual = 0.0;  // |f_n(n)| / max_k |f_k(n)|
};

namespace detail {

struct PoleCondition {
  double value;  // f_n(n)
  double scale;  // max_{k<=n} |f_k(n)|
};

/// Evaluates f_n with x pinned exactly to the pole index n. Every pole term
/// delta^2/(4(x-k)) encountered has k < n, so the value is finite and smooth
/// in (g, delta).
inline PoleCondition pole_condition(const ModelParams& p, BargmannQ q, int n) {
  validate(p);
  validate(p.family, q);
  if (p.delta == 0.0) throw DeltaZero();
  if (n < 1) throw Error("pole index n must be >= 1 (f_0 = 1 cannot vanish)");
  if (!(p.g > 0.0))
    throw CouplingOutOfRange("pole condition needs g > 0");

  double beta = squeeze_beta(p);
  double qv = q.value();
  double x = static_cast<double>(n);
  double f_prev = 0.0, f = 1.0, scale = 1.0;
  for (int k = 0; k < n; ++k) {
    auto c = step(p, qv, beta, k, x);
    double f_next = c.a * f - c.b * f_prev;
    f_prev = f;
    f = f_next;
    scale = std::max(scale, std::abs(f));
  }
  return PoleCondition{f, scale};
}

/// Scan-then-bisect for sign changes of `condition` over [lo, hi].
inline std::vector<double> scan_bisect(const std::function<double(double)>& condition,
                                       double lo, double hi, double tol,
                                       int grid) {
  std::vector<double> roots;
  double step = (hi - lo) / grid;
  double x_prev = lo, v_prev = condition(lo);
  for (int i = 1; i <= grid; ++i) {
    double x_i = (i == grid) ? hi : lo + i * step;
    double v_i = condition(x_i);
    if ((v_prev < 0.0) != (v_i < 0.0)) {
      double a = x_prev, b = x_i, va = v_prev;
      while (b - a > tol) {
        double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        double vm = condition(mid);
        if ((vm < 0.0) == (va < 0.0)) {
          a = mid;
          va = vm;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x_prev = x_i;
    v_prev = v_i;
  }
  return roots;
}

}  // namespace detail

/// f_n evaluated at x = n; the level at x = n is exceptional iff this
/// vanishes.
inline double f_n_at_pole(const ModelParams& p, BargmannQ q, int n) {
  return detail::pole_condition(p, q, n).value;
}

/// Closed form of the n=1 condition for the two-mode family,
/// (2q+1) g^2 + delta^2/4 - 1 = 0, solved for g.
inline double closed_form_n1(BargmannQ q, double delta) {
  double rhs = 1.0 - delta * delta / 4.0;
  if (!(rhs > 0.0))
    throw NoSolution("n=1 condition has no coupling solution for delta >= 2");
  return std::sqrt(rhs / (2.0 * q.value() + 1.0));
}

/// All couplings in (g_lo, g_hi) at which the pole at x=n is lifted, found
/// by scanning the scale-normalized f_n(n) on 512 points and bisecting each
/// sign change. An empty result is a legitimate outcome.
inline std::vector<ExceptionalPoint> solve_exceptional_g(
    const ModelParams& params_template, BargmannQ q, int n, double g_lo,
    double g_hi, double tol_g = 1e-12, int grid = 512) {
  if (params_template.delta <= 0.0) throw DeltaZero();
  double gc = critical_coupling(params_template.family);
  if (!(g_lo > 0.0) || !(g_hi < gc) || !(g_lo < g_hi))
    throw CouplingOutOfRange("bracket must lie inside (0, g_critical)");

  auto normalized = [&](double g) {
    ModelParams p = params_template;
    p.g = g;
    auto c = detail::pole_condition(p, q, n);
    return c.value / c.scale;
  };
  std::vector<ExceptionalPoint> points;
  for (double g_star : detail::scan_bisect(normalized, g_lo, g_hi, tol_g, grid)) {
    ModelParams p = params_template;
    p.g = g_star;
    points.push_back(ExceptionalPoint{n, q, g_star, params_template.delta,
                                      energy_from_x(p, q, static_cast<double>(n)),
                                      std::abs(normalized(g_star))});
  }
  return points;
}

/// Same machinery with the roles of g and delta swapped: solves for the
/// splitting at fixed coupling.
inline std::vector<ExceptionalPoint> solve_exceptional_delta(
    const ModelParams& params_template, BargmannQ q, int n, double delta_lo,
    double delta_hi, double tol_delta = 1e-12, int grid = 512) {
  validate(params_template);
  if (!(params_template.g > 0.0))
    throw CouplingOutOfRange("fixed coupling must be positive");
  if (!(delta_lo > 0.0) || !(delta_lo < delta_hi))
    throw Error("delta bracket must satisfy 0 < delta_lo < delta_hi");

  auto normalized = [&](double delta) {
    ModelParams p = params_template;
    p.delta = delta;
    auto c = detail::pole_condition(p, q, n);
    return c.value / c.scale;
  };
  std::vector<ExceptionalPoint> points;
  for (double d_star :
       detail::scan_bisect(normalized, delta_lo, delta_hi, tol_delta, grid)) {
    ModelParams p = params_template;
    p.delta = d_star;
    points.push_back(ExceptionalPoint{n, q, params_template.g, d_star,
                                      energy_from_x(p, q, static_cast<double>(n)),
                                      std::abs(normalized(d_star))});
  }
  return points;
}

/// Diagnostics of the pole-lifting check at a candidate exceptional point.
struct LiftingReport {
  int n = 1;
  BargmannQ q{2};
  double energy = 0.0;
  // max |G_pm(n +- h)| per probe offset h in {1e-2, 1e-3, 1e-4}
  std::vector<double> probe_h;
  std::vector<double> max_abs_plus;
  std::vector<double> max_abs_minus;
  double growth_plus = 0.0;   // last probe / first probe
  double growth_minus = 0.0;
  int ed_count_plus = 0;      // ED levels within ed_window of the energy
  int ed_count_minus = 0;
  double ed_nearest_plus = 0.0;
  double ed_nearest_minus = 0.0;
  bool degenerate_pair = false;
  bool passed = false;
};

/// Confirms the pole at x = n is lifted in BOTH branches (bounded values at
/// n +- h instead of 1/h growth) and that the diagonalization oracle shows
/// exactly one level per parity sector at the exceptional energy. Throws
/// LiftingFailed when the probes still grow like a pole.
inline LiftingReport verify_lifting(const ModelParams& p, BargmannQ q, int n,
                                    const Controls& ctl = {},
                                    double ed_window = 1e-6) {
  validate(p);
  if (p.delta == 0.0) throw DeltaZero();

  LiftingReport rep;
  rep.n = n;
  rep.q = q;
  rep.energy = energy_from_x(p, q, static_cast<double>(n));
  rep.probe_h = {1e-2, 1e-3, 1e-4};
  for (double h : rep.probe_h) {
    GEvaluation below = eval_g(p, q, n - h, ctl.series);
    GEvaluation above = eval_g(p, q, n + h, ctl.series);
    rep.max_abs_plus.push_back(
        std::max(std::abs(below.value_plus), std::abs(above.value_plus)));
    rep.max_abs_minus.push_back(
        std::max(std::abs(below.value_minus), std::abs(above.value_minus)));
  }
  rep.growth_plus = rep.max_abs_plus.back() / rep.max_abs_plus.front();
  rep.growth_minus = rep.max_abs_minus.back() / rep.max_abs_minus.front();
  // A surviving simple pole grows by ~100 from h=1e-2 to h=1e-4.
  constexpr double kGrowthLimit = 10.0;
  if (rep.growth_plus > kGrowthLimit || rep.growth_minus > kGrowthLimit)
    throw LiftingFailed("pole at x=" + std::to_string(n) +
                        " not lifted: probe growth " +
                        std::to_string(rep.growth_plus) + " (plus), " +
                        std::to_string(rep.growth_minus) + " (minus)");

  int n_levels = n + 4;
  for (Parity parity : {Parity::Plus, Parity::Minus}) {
    auto levels = ed_spectrum(p, q, parity, n_levels, ctl.ed);
    int count = 0;
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& lvl : levels) {
      double d = std::abs(lvl.energy - rep.energy);
      if (d < ed_window) ++count;
      nearest = std::min(nearest, d);
    }
    if (parity == Parity::Plus) {
      rep.ed_count_plus = count;
      rep.ed_nearest_plus = nearest;
    } else {
      rep.ed_count_minus = count;
      rep.ed_nearest_minus = nearest;
    }
  }
  rep.degenerate_pair = rep.ed_count_plus == 1 && rep.ed_count_minus == 1;
  rep.passed = rep.degenerate_pair;
  return rep;
}

}  // namespace qrabi
