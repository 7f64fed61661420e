#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qrabi/ed.hpp"
#include "qrabi/exceptional.hpp"
#include "qrabi/io.hpp"
#include "qrabi/solver.hpp"

namespace qrabi {

namespace detail {

inline ModelParams params_of(const RunConfig& cfg, double g) {
  return ModelParams{cfg.delta, g, cfg.family};
}

inline void validate_common(const RunConfig& cfg) {
  if (cfg.q_list.empty()) throw ConfigError("at least one Bargmann index required");
  for (BargmannQ q : cfg.q_list) validate(cfg.family, q);
  if (cfg.g_values.empty()) throw ConfigError("a coupling value or grid is required");
  double gc = critical_coupling(cfg.family);
  for (double g : cfg.g_values)
    if ((!(g >= 0.0) || !(g < gc)) && !cfg.allow_critical)
      throw ConfigError("g=" + format_double(g) + " outside [0, " +
                        format_double(gc) + ") for the " + family_name(cfg.family) +
                        " model");
}

inline void require_spectral_delta(const RunConfig& cfg) {
  if (cfg.delta == 0.0)
    throw ConfigError(
        "delta=0 has no spectral-function path; the spectrum is analytic, "
        "use the ed subcommand");
}

}  // namespace detail

/// Samples G_pm over a uniform x grid; grid points inside a pole guard are
/// punched out and show up as missing rows.
inline Table cmd_gscan(const RunConfig& cfg) {
  detail::validate_common(cfg);
  detail::require_spectral_delta(cfg);
  if (cfg.samples < 2) throw ConfigError("need at least 2 samples");
  if (!(cfg.x_min < cfg.x_max)) throw ConfigError("x_min must be below x_max");
  if (cfg.g_values.size() != 1 || cfg.q_list.size() != 1)
    throw ConfigError("gscan takes a single g and a single q");

  ModelParams p = detail::params_of(cfg, cfg.g_values[0]);
  BargmannQ q = cfg.q_list[0];

  Table t;
  append_common_echo(t, cfg);
  t.config_echo.emplace_back("x_min", Cell::number(cfg.x_min));
  t.config_echo.emplace_back("samples", Cell::integer_of(cfg.samples));
  t.columns = {"x", "g_plus", "g_minus", "n_terms", "pole_distance"};

  long skipped = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    double x = cfg.x_min + (cfg.x_max - cfg.x_min) * i / (cfg.samples - 1.0);
    if (detail::pole_distance(x) < cfg.controls.series.pole_guard) {
      ++skipped;
      continue;
    }
    GEvaluation ev = eval_g(p, q, x, cfg.controls.series);
    t.rows.push_back({Cell::number(x), Cell::number(ev.value_plus),
                      Cell::number(ev.value_minus), Cell::integer_of(ev.n_terms_used),
                      Cell::number(ev.pole_distance)});
  }
  t.status.emplace_back("rows", Cell::integer_of(static_cast<long long>(t.rows.size())));
  t.status.emplace_back("skipped_near_poles", Cell::integer_of(skipped));
  return t;
}

/// Regular spectrum per (g, q, parity); failed cells become status rows.
inline Table cmd_spectrum(const RunConfig& cfg) {
  detail::validate_common(cfg);
  detail::require_spectral_delta(cfg);

  SweepTable sweep = sweep_g(detail::params_of(cfg, 0.0), cfg.q_list, cfg.g_values,
                             cfg.x_max, cfg.controls);
  std::vector<Parity> parities = selected_parities(cfg.parity);
  if (parities.size() == 1) {
    std::vector<SweepCell> kept;
    for (auto& cell : sweep.cells)
      if (cell.parity == parities[0]) kept.push_back(std::move(cell));
    sweep.cells = std::move(kept);
  }

  Table t;
  append_common_echo(t, cfg);
  t.config_echo.emplace_back("crosscheck", Cell::boolean(cfg.crosscheck));
  t.columns = {"g",      "q",           "parity",   "level_index", "x_root",
               "energy", "classification", "residual", "status"};
  if (cfg.crosscheck) {
    t.columns.push_back("ed_energy");
    t.columns.push_back("abs_de");
    t.columns.push_back("ed_converged");
  }

  long failures = 0;
  for (const SweepCell& cell : sweep.cells) {
    if (cell.status != "ok") {
      ++failures;
      std::vector<Cell> row = {Cell::number(cell.g), Cell::number(cell.q.value()),
                               Cell::text_of(parity_name(cell.parity))};
      while (row.size() < t.columns.size()) row.push_back(Cell::empty());
      row[8] = Cell::text_of(cell.status);
      t.rows.push_back(std::move(row));
      continue;
    }
    std::vector<EdLevel> ed;
    if (cfg.crosscheck && !cell.points.empty())
      ed = ed_spectrum(ModelParams{cfg.delta, cell.g, cfg.family}, cell.q,
                       cell.parity, static_cast<int>(cell.points.size()),
                       cfg.controls.ed);
    for (std::size_t i = 0; i < cell.points.size(); ++i) {
      const SpectralPoint& pt = cell.points[i];
      std::vector<Cell> row = {
          Cell::number(cell.g),
          Cell::number(cell.q.value()),
          Cell::text_of(parity_name(cell.parity)),
          Cell::integer_of(static_cast<long long>(i)),
          Cell::number(pt.x_root),
          Cell::number(pt.energy),
          Cell::text_of(pt.classification == Classification::Regular
                            ? "regular"
                            : "exceptional"),
          Cell::number(pt.residual),
          Cell::text_of("ok")};
      if (cfg.crosscheck) {
        row.push_back(Cell::number(ed[i].energy));
        row.push_back(Cell::number(std::abs(ed[i].energy - pt.energy)));
        row.push_back(Cell::boolean(ed[i].converged));
      }
      t.rows.push_back(std::move(row));
    }
  }
  t.status.emplace_back("rows", Cell::integer_of(static_cast<long long>(t.rows.size())));
  t.status.emplace_back("cell_failures", Cell::integer_of(failures));
  return t;
}

/// Exceptional (doubly degenerate) levels over a pole-index range, solved in
/// g at fixed delta or in delta at fixed g, each verified by the lifting and
/// degeneracy probes.
inline Table cmd_exceptional(const RunConfig& cfg) {
  detail::validate_common(cfg);
  detail::require_spectral_delta(cfg);
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min)
    throw ConfigError("pole index range must satisfy 1 <= n_min <= n_max");

  Table t;
  append_common_echo(t, cfg);
  t.config_echo.emplace_back("n_min", Cell::integer_of(cfg.n_min));
  t.config_echo.emplace_back("n_max", Cell::integer_of(cfg.n_max));
  t.config_echo.emplace_back("solve_for",
                             Cell::text_of(cfg.solve_for_delta ? "delta" : "g"));
  t.columns = {"n", "q", "g_star", "delta_star", "energy", "residual", "verified"};

  double gc = critical_coupling(cfg.family);
  double lo = cfg.scan_lo > 0.0 ? cfg.scan_lo : (cfg.solve_for_delta ? 1e-3 : 1e-3 * gc);
  double hi = cfg.scan_hi > 0.0 ? cfg.scan_hi
                                : (cfg.solve_for_delta ? 2.0 : gc * (1.0 - 1e-3));

  for (BargmannQ q : cfg.q_list) {
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
      std::vector<ExceptionalPoint> points;
      if (cfg.solve_for_delta)
        points = solve_exceptional_delta(detail::params_of(cfg, cfg.g_values[0]), q,
                                         n, lo, hi);
      else
        points = solve_exceptional_g(detail::params_of(cfg, 0.0), q, n, lo, hi);
      for (const ExceptionalPoint& pt : points) {
        ModelParams at_star{pt.delta_star, pt.g_star, cfg.family};
        bool verified = false;
        try {
          verified = verify_lifting(at_star, q, n, cfg.controls).passed;
        } catch (const Error&) {
          verified = false;
        }
        t.rows.push_back({Cell::integer_of(pt.n), Cell::number(pt.q.value()),
                          Cell::number(pt.g_star), Cell::number(pt.delta_star),
                          Cell::number(pt.energy), Cell::number(pt.residual),
                          Cell::boolean(verified)});
      }
    }
  }
  t.status.emplace_back("rows", Cell::integer_of(static_cast<long long>(t.rows.size())));
  return t;
}

/// Truncated-diagonalization levels per sector.
inline Table cmd_ed(const RunConfig& cfg) {
  detail::validate_common(cfg);
  if (cfg.n_levels < 1) throw ConfigError("need at least one level");
  if (cfg.g_values.size() != 1) throw ConfigError("ed takes a single g");

  Table t;
  append_common_echo(t, cfg);
  t.config_echo.emplace_back("levels", Cell::integer_of(cfg.n_levels));
  t.config_echo.emplace_back("allow_critical", Cell::boolean(cfg.allow_critical));
  t.columns = {"q", "parity", "level_index", "energy", "truncation", "converged"};

  ModelParams p = detail::params_of(cfg, cfg.g_values[0]);
  for (BargmannQ q : cfg.q_list) {
    for (Parity parity : selected_parities(cfg.parity)) {
      auto levels =
          ed_spectrum(p, q, parity, cfg.n_levels, cfg.controls.ed, cfg.allow_critical);
      for (std::size_t i = 0; i < levels.size(); ++i)
        t.rows.push_back({Cell::number(q.value()), Cell::text_of(parity_name(parity)),
                          Cell::integer_of(static_cast<long long>(i)),
                          Cell::number(levels[i].energy),
                          Cell::integer_of(levels[i].truncation_used),
                          Cell::boolean(levels[i].converged)});
    }
  }
  t.status.emplace_back("rows", Cell::integer_of(static_cast<long long>(t.rows.size())));
  return t;
}

/// Adjacent-spacing table over a level window, one block per g, plus one
/// analytic inter-pole reference row (kind=pole) per g.
inline Table cmd_collapse(const RunConfig& cfg) {
  detail::validate_common(cfg);
  detail::require_spectral_delta(cfg);
  if (cfg.q_list.size() != 1) throw ConfigError("collapse takes a single q");
  Parity branch = cfg.parity == ParitySelection::Minus ? Parity::Minus : Parity::Plus;

  Table t;
  append_common_echo(t, cfg);
  t.config_echo.emplace_back("level_lo", Cell::integer_of(cfg.level_lo));
  t.config_echo.emplace_back("level_hi", Cell::integer_of(cfg.level_hi));
  t.columns = {"g", "classification", "level_index", "spacing", "two_beta", "ratio"};

  for (double g : cfg.g_values) {
    ModelParams p = detail::params_of(cfg, g);
    CollapseReport rep =
        collapse_spacing(p, cfg.q_list[0], branch, cfg.level_lo, cfg.level_hi,
                         cfg.controls);
    t.rows.push_back({Cell::number(g), Cell::text_of("pole"), Cell::empty(),
                      Cell::number(rep.two_beta), Cell::number(rep.two_beta),
                      Cell::number(1.0)});
    for (std::size_t i = 0; i < rep.spacings.size(); ++i)
      t.rows.push_back({Cell::number(g), Cell::text_of("level"),
                        Cell::integer_of(cfg.level_lo + static_cast<long long>(i)),
                        Cell::number(rep.spacings[i]), Cell::number(rep.two_beta),
                        Cell::number(rep.ratios[i])});
  }
  t.status.emplace_back("rows", Cell::integer_of(static_cast<long long>(t.rows.size())));
  return t;
}

/// Side-by-side G-function and diagonalization energies per level.
inline Table cmd_crosscheck(const RunConfig& cfg) {
  detail::validate_common(cfg);
  detail::require_spectral_delta(cfg);
  if (cfg.n_levels < 1) throw ConfigError("need at least one level");

  Table t;
  append_common_echo(t, cfg);
  t.config_echo.emplace_back("levels", Cell::integer_of(cfg.n_levels));
  t.columns = {"g",         "q",         "parity",      "level_index",
               "energy_g",  "energy_ed", "abs_de",      "ed_converged"};

  for (double g : cfg.g_values) {
    ModelParams p = detail::params_of(cfg, g);
    for (BargmannQ q : cfg.q_list) {
      for (Parity parity : selected_parities(cfg.parity)) {
        auto ed = ed_spectrum(p, q, parity, cfg.n_levels, cfg.controls.ed);
        double x_hi = x_from_energy(p, q, ed.back().energy) + 0.7;
        auto pts = regular_spectrum(p, q, parity, std::max(1.0, x_hi), cfg.controls);
        for (int i = 0; i < cfg.n_levels; ++i) {
          Cell eg = i < static_cast<int>(pts.size())
                        ? Cell::number(pts[static_cast<std::size_t>(i)].energy)
                        : Cell::empty();
          Cell de = i < static_cast<int>(pts.size())
                        ? Cell::number(std::abs(
                              pts[static_cast<std::size_t>(i)].energy - ed[i].energy))
                        : Cell::empty();
          t.rows.push_back({Cell::number(g), Cell::number(q.value()),
                            Cell::text_of(parity_name(parity)), Cell::integer_of(i),
                            eg, Cell::number(ed[i].energy), de,
                            Cell::boolean(ed[i].converged)});
        }
      }
    }
  }
  t.status.emplace_back("rows", Cell::integer_of(static_cast<long long>(t.rows.size())));
  return t;
}

}  // namespace qrabi
