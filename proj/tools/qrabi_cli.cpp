#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrabi/commands.hpp"
#include "qrabi/qrabi.hpp"

namespace {

struct CliState {
  qrabi::RunConfig cfg;
  std::string family = "two-mode";
  std::string parity = "both";
  std::string format = "csv";
  std::vector<double> q_values;
  double g_single = -1.0;
  double g_start = -1.0, g_stop = -1.0;
  int g_steps = 0;
};

void add_common_options(CLI::App* sub, CliState& st) {
  sub->add_option("--family", st.family, "model family")
      ->check(CLI::IsMember({"two-mode", "two-photon"}));
  sub->add_option("--delta", st.cfg.delta, "qubit splitting");
  sub->add_option("--g", st.g_single, "coupling strength");
  sub->add_option("--g-start", st.g_start, "coupling grid start");
  sub->add_option("--g-stop", st.g_stop, "coupling grid stop");
  sub->add_option("--g-steps", st.g_steps, "coupling grid point count");
  sub->add_option("--q", st.q_values, "Bargmann index (repeatable)");
  sub->add_option("--parity", st.parity, "parity selection")
      ->check(CLI::IsMember({"plus", "minus", "both"}));
  sub->add_option("--x-max", st.cfg.x_max, "upper end of the spectral-parameter scan");
  sub->add_option("--format", st.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", st.cfg.out_path, "output path (default: stdout)");

  auto& ctl = st.cfg.controls;
  sub->add_option("--eps-tail", ctl.series.eps_tail, "series tail threshold");
  sub->add_option("--tail-window", ctl.series.tail_window,
                  "consecutive sub-threshold terms required");
  sub->add_option("--n-max-hard", ctl.series.n_max_hard, "series truncation cap");
  sub->add_option("--pole-guard", ctl.series.pole_guard, "pole exclusion radius in x");
  sub->add_option("--grid-points", ctl.root.grid_points, "scan points per interval");
  sub->add_option("--tol-x", ctl.root.tol_x, "root bracket tolerance");
  sub->add_option("--x-floor", ctl.root.x_floor,
                  "ground-state scan floor (negative value; default auto)");
  sub->add_option("--ed-n0", ctl.ed.n0, "initial diagonalization truncation");
  sub->add_option("--ed-n-hard", ctl.ed.n_hard, "diagonalization truncation cap");
  sub->add_option("--tol-ed", ctl.ed.tol_ed, "diagonalization convergence tolerance");
}

void finalize(CliState& st) {
  using namespace qrabi;
  st.cfg.family =
      st.family == "two-mode" ? ModelFamily::TwoMode : ModelFamily::TwoPhoton;
  st.cfg.parity = st.parity == "plus"    ? ParitySelection::Plus
                  : st.parity == "minus" ? ParitySelection::Minus
                                         : ParitySelection::Both;
  st.cfg.format = st.format == "json" ? OutputFormat::Json : OutputFormat::Csv;

  if (st.g_steps > 0 || st.g_start >= 0.0 || st.g_stop >= 0.0) {
    if (st.g_steps < 1 || st.g_start < 0.0 || st.g_stop < st.g_start)
      throw ConfigError("coupling grid needs --g-start <= --g-stop and --g-steps >= 1");
    st.cfg.g_values.clear();
    for (int i = 0; i < st.g_steps; ++i)
      st.cfg.g_values.push_back(
          st.g_steps == 1
              ? st.g_start
              : st.g_start + (st.g_stop - st.g_start) * i / (st.g_steps - 1.0));
  } else if (st.g_single >= 0.0) {
    st.cfg.g_values = {st.g_single};
  }

  st.cfg.q_list.clear();
  if (st.q_values.empty())
    st.q_values = {st.cfg.family == ModelFamily::TwoMode ? 0.5 : 0.25};
  for (double q : st.q_values) st.cfg.q_list.push_back(BargmannQ::from_value(q));
}

void emit(const qrabi::Table& table, const qrabi::RunConfig& cfg) {
  auto write = [&](std::ostream& os) {
    if (cfg.format == qrabi::OutputFormat::Json)
      qrabi::write_json(os, table);
    else
      qrabi::write_csv(os, table);
  };
  if (cfg.out_path.empty()) {
    write(std::cout);
  } else {
    std::ofstream os(cfg.out_path);
    if (!os) throw qrabi::ConfigError("cannot open output file " + cfg.out_path);
    write(os);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver for the two-mode and two-photon quantum Rabi models"};
  app.require_subcommand(1);
  CliState st;

  auto* gscan = app.add_subcommand(
      "gscan", "sample G_plus/G_minus over a spectral-parameter grid");
  add_common_options(gscan, st);
  gscan->add_option("--x-min", st.cfg.x_min, "lower end of the sample grid");
  gscan->add_option("--samples", st.cfg.samples, "number of grid samples");

  auto* spectrum = app.add_subcommand(
      "spectrum", "regular spectrum from G-function roots, per (g, q, parity)");
  add_common_options(spectrum, st);
  spectrum->add_flag("--crosscheck", st.cfg.crosscheck,
                     "append diagonalization energies and |dE| per level");

  auto* exceptional = app.add_subcommand(
      "exceptional", "doubly degenerate levels from the pole-lifting condition");
  add_common_options(exceptional, st);
  exceptional->add_option("--n-min", st.cfg.n_min, "first lifted pole index");
  exceptional->add_option("--n-max", st.cfg.n_max, "last lifted pole index");
  exceptional->add_option("--scan-lo", st.cfg.scan_lo, "scan bracket lower end");
  exceptional->add_option("--scan-hi", st.cfg.scan_hi, "scan bracket upper end");
  exceptional->add_flag("--solve-delta", st.cfg.solve_for_delta,
                        "solve for the splitting at fixed g instead of for g");

  auto* ed = app.add_subcommand(
      "ed", "truncated-diagonalization oracle spectrum per sector");
  add_common_options(ed, st);
  ed->add_option("--levels", st.cfg.n_levels, "number of levels");
  ed->add_flag("--allow-critical", st.cfg.allow_critical,
               "permit g at or beyond the collapse coupling");

  auto* collapse = app.add_subcommand(
      "collapse", "adjacent level spacings against the inter-pole distance");
  add_common_options(collapse, st);
  collapse->add_option("--level-lo", st.cfg.level_lo, "window start level");
  collapse->add_option("--level-hi", st.cfg.level_hi, "window end level");

  auto* crosscheck = app.add_subcommand(
      "crosscheck", "G-function energies against the diagonalization oracle");
  add_common_options(crosscheck, st);
  crosscheck->add_option("--levels", st.cfg.n_levels, "number of levels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help/version exit clean, bad flags are config errors
  }

  try {
    finalize(st);
    qrabi::Table table;
    if (gscan->parsed())
      table = qrabi::cmd_gscan(st.cfg);
    else if (spectrum->parsed())
      table = qrabi::cmd_spectrum(st.cfg);
    else if (exceptional->parsed())
      table = qrabi::cmd_exceptional(st.cfg);
    else if (ed->parsed())
      table = qrabi::cmd_ed(st.cfg);
    else if (collapse->parsed())
      table = qrabi::cmd_collapse(st.cfg);
    else
      table = qrabi::cmd_crosscheck(st.cfg);
    emit(table, st.cfg);
  } catch (const qrabi::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const qrabi::InvalidSector& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const qrabi::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
