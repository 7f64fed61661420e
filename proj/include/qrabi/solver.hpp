#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qrabi/controls.hpp"
#include "qrabi/gfunction.hpp"

namespace qrabi {

enum class Classification { Regular, Exceptional };

/// One solved level.
struct SpectralPoint {
  double x_root = 0.0;
  double energy = 0.0;
  Parity branch = Parity::Plus;  // which of G_plus / G_minus vanished
  BargmannQ q{2};
  Classification classification = Classification::Regular;
  double residual = 0.0;     // |G(x_root)|
  double local_scale = 0.0;  // max |G| on the bracketing grid points
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

namespace detail {

struct IntervalRoot {
  double x;
  double residual;
  double local_scale;
  double bracket_lo;
  double bracket_hi;
};

struct SignCell {
  double lo, hi;
  double v_lo, v_hi;
};

/// Uniform scan of [lo, hi] bracketing sign changes, each refined by
/// bisection. At most two roots can exist between simple poles. A scan
/// seeing none may be hiding a near-tangent pair, and one seeing more
/// than two is inconsistent; both retry once on a 4x finer grid. A
/// persistent excess is reported instead of guessed away.
template <typename Fn>
std::vector<IntervalRoot> scan_and_bisect(Fn&& f, double lo, double hi,
                                          int grid_points, double tol_x) {
  int m = std::max(2, grid_points);
  std::vector<SignCell> cells;
  for (int attempt = 0; attempt < 2; ++attempt) {
    cells.clear();
    double step = (hi - lo) / m;
    double x_prev = lo, v_prev = f(lo);
    for (int i = 1; i <= m; ++i) {
      double x_i = (i == m) ? hi : lo + i * step;
      double v_i = f(x_i);
      if ((v_prev < 0.0) != (v_i < 0.0))
        cells.push_back({x_prev, x_i, v_prev, v_i});
      x_prev = x_i;
      v_prev = v_i;
    }
    if (cells.size() == 1 || cells.size() == 2) break;
    if (attempt == 1 && cells.size() > 2)
      throw GridResolutionExceeded(
          "sign pattern inconsistent after refinement: " +
          std::to_string(cells.size()) + " sign changes in (" +
          std::to_string(lo) + ", " + std::to_string(hi) + ")");
    m *= 4;
  }

  std::vector<IntervalRoot> roots;
  for (const auto& cell : cells) {
    double a = cell.lo, b = cell.hi;
    double va = cell.v_lo;
    double scale = std::max(std::abs(cell.v_lo), std::abs(cell.v_hi));
    while (b - a > tol_x) {
      double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      double vm = f(mid);
      if ((vm < 0.0) == (va < 0.0)) {
        a = mid;
        va = vm;
      } else {
        b = mid;
      }
    }
    double x_root = 0.5 * (a + b);
    roots.push_back({x_root, std::abs(f(x_root)), scale, cell.lo, cell.hi});
  }

  std::sort(roots.begin(), roots.end(),
            [](const IntervalRoot& a, const IntervalRoot& b) { return a.x < b.x; });
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (roots[i].x - roots[i - 1].x <= 10.0 * tol_x) {
      roots.erase(roots.begin() + static_cast<long>(i));
      --i;
    }
  return roots;
}

}  // namespace detail

/// Roots of one G branch inside a pole-free interval. Endpoints lying on
/// (or within pole_guard of) a pole are pulled inside by twice the guard.
/// A uniform scan brackets sign changes, bisection refines each to tol_x.
/// Simple poles force between zero and two roots per inter-pole interval;
/// if the scan keeps reporting more sign changes after one 4x refinement,
/// the inconsistency is reported instead of guessed away.
inline std::vector<detail::IntervalRoot> find_zeros_in_interval(
    const ModelParams& p, BargmannQ q, Parity branch, double x_lo, double x_hi,
    const Controls& ctl = {}) {
  validate(p);
  validate(p.family, q);
  if (p.delta == 0.0) throw DeltaZero();
  if (!(x_lo < x_hi)) throw Error("find_zeros_in_interval requires x_lo < x_hi");

  double guard = ctl.series.pole_guard;
  double lo = x_lo, hi = x_hi;
  long nearest = 0;
  if (detail::pole_distance(lo, &nearest) < guard)
    lo = static_cast<double>(nearest) + 2.0 * guard;
  if (detail::pole_distance(hi, &nearest) < guard)
    hi = static_cast<double>(nearest) - 2.0 * guard;
  if (!(lo < hi)) return {};
  for (long pole : pole_positions(lo, hi))
    throw Error("interval (" + std::to_string(x_lo) + ", " + std::to_string(x_hi) +
                ") contains interior pole at x=" + std::to_string(pole));

  auto g_at = [&](double x) { return eval_g_branch(p, q, branch, x, ctl.series); };
  return detail::scan_and_bisect(g_at, lo, hi, ctl.root.grid_points,
                                 ctl.root.tol_x);
}

/// Default scan floor for the ground-state interval. The spectrum is bounded
/// below by beta - 1 - delta, i.e. x_ground >= 1/2 - delta/(2 beta) - q, so
/// this floor always undershoots it.
inline double default_x_floor(const ModelParams& p, BargmannQ q) {
  return -(1.0 + p.delta) / squeeze_beta(p) - 2.0 * q.value();
}

/// All regular levels of one branch with x < x_max: scans (x_floor, 0) and
/// every inter-pole interval, converts roots to energies, sorts ascending.
inline std::vector<SpectralPoint> regular_spectrum(const ModelParams& p, BargmannQ q,
                                                   Parity branch, double x_max,
                                                   const Controls& ctl = {}) {
  if (!(x_max > 0.0)) throw Error("x_max must be positive");
  double x_floor =
      ctl.root.x_floor > 0.0 ? default_x_floor(p, q) : ctl.root.x_floor;

  std::vector<SpectralPoint> points;
  auto scan = [&](double lo, double hi) {
    std::vector<detail::IntervalRoot> roots;
    try {
      roots = find_zeros_in_interval(p, q, branch, lo, hi, ctl);
    } catch (const GridResolutionExceeded& e) {
      throw GridResolutionExceeded(std::string(e.what()) + " [interval (" +
                                   std::to_string(lo) + ", " + std::to_string(hi) +
                                   ")]");
    }
    for (const auto& r : roots) {
      SpectralPoint pt;
      pt.x_root = r.x;
      pt.energy = energy_from_x(p, q, r.x);
      pt.branch = branch;
      pt.q = q;
      pt.classification = Classification::Regular;
      pt.residual = r.residual;
      pt.local_scale = r.local_scale;
      pt.bracket_lo = r.bracket_lo;
      pt.bracket_hi = r.bracket_hi;
      points.push_back(pt);
    }
  };

  scan(x_floor, std::min(0.0, x_max));
  for (double n = 0.0; n < x_max; n += 1.0) scan(n, std::min(n + 1.0, x_max));

  std::sort(points.begin(), points.end(),
            [](const SpectralPoint& a, const SpectralPoint& b) {
              return a.energy < b.energy;
            });
  return points;
}

/// One (g, q, parity) cell of a coupling sweep. A failed cell carries its
/// error message instead of aborting the sweep.
struct SweepCell {
  double g = 0.0;
  BargmannQ q{2};
  Parity parity = Parity::Plus;
  std::vector<SpectralPoint> points;
  std::string status = "ok";
};

struct SweepTable {
  ModelFamily family = ModelFamily::TwoMode;
  double delta = 0.0;
  double x_max = 0.0;
  Controls controls;
  std::vector<SweepCell> cells;
};

/// Spectrum as a function of coupling for each (q, parity), suitable for
/// re-plotting level diagrams. Cells are solved in deterministic
/// (g, q, parity) order.
inline SweepTable sweep_g(const ModelParams& params_template,
                          const std::vector<BargmannQ>& q_list,
                          const std::vector<double>& g_grid, double x_max,
                          const Controls& ctl = {}) {
  if (params_template.delta == 0.0) throw DeltaZero();
  double gc = critical_coupling(params_template.family);
  for (double g : g_grid)
    if (!(g >= 0.0) || !(g < gc))
      throw CouplingOutOfRange("sweep grid value g=" + std::to_string(g) +
                               " outside [0, " + std::to_string(gc) + ")");

  SweepTable table;
  table.family = params_template.family;
  table.delta = params_template.delta;
  table.x_max = x_max;
  table.controls = ctl;
  for (double g : g_grid) {
    ModelParams p = params_template;
    p.g = g;
    for (BargmannQ q : q_list) {
      for (Parity parity : {Parity::Plus, Parity::Minus}) {
        SweepCell cell;
        cell.g = g;
        cell.q = q;
        cell.parity = parity;
        try {
          cell.points = regular_spectrum(p, q, parity, x_max, ctl);
        } catch (const Error& e) {
          cell.status = e.what();
        }
        table.cells.push_back(std::move(cell));
      }
    }
  }
  return table;
}

/// Adjacent level spacings of one branch over a window of consecutive level
/// indices, with each spacing normalized by the inter-pole energy distance
/// 2 beta. The normalized spacings tend to 1 as g approaches the collapse.
struct CollapseReport {
  double two_beta = 0.0;
  int level_lo = 0;
  int level_hi = 0;
  std::vector<double> energies;  // E_{level_lo} .. E_{level_hi}
  std::vector<double> spacings;  // E_{i+1} - E_i
  std::vector<double> ratios;    // spacing / (2 beta)
  double mean_spacing = 0.0;
};

inline CollapseReport collapse_spacing(const ModelParams& p, BargmannQ q,
                                       Parity branch, int level_lo, int level_hi,
                                       const Controls& ctl = {}) {
  if (level_lo < 0 || level_hi <= level_lo)
    throw Error("level window must satisfy 0 <= level_lo < level_hi");

  std::size_t needed = static_cast<std::size_t>(level_hi) + 1;
  double x_max = level_hi + 3.0;
  std::vector<SpectralPoint> pts;
  for (int attempt = 0; attempt < 4; ++attempt) {
    pts = regular_spectrum(p, q, branch, x_max, ctl);
    if (pts.size() >= needed) break;
    x_max += 4.0;
  }
  if (pts.size() < needed)
    throw NoConvergence("found only " + std::to_string(pts.size()) +
                        " levels, need " + std::to_string(needed));

  CollapseReport rep;
  rep.two_beta = 2.0 * squeeze_beta(p);
  rep.level_lo = level_lo;
  rep.level_hi = level_hi;
  for (int i = level_lo; i <= level_hi; ++i)
    rep.energies.push_back(pts[static_cast<std::size_t>(i)].energy);
  for (std::size_t i = 0; i + 1 < rep.energies.size(); ++i) {
    double s = rep.energies[i + 1] - rep.energies[i];
    rep.spacings.push_back(s);
    rep.ratios.push_back(s / rep.two_beta);
  }
  for (double s : rep.spacings) rep.mean_spacing += s;
  rep.mean_spacing /= static_cast<double>(rep.spacings.size());
  return rep;
}

}  // namespace qrabi
