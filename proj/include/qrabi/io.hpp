#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qrabi/controls.hpp"
#include "qrabi/errors.hpp"
#include "qrabi/model.hpp"

namespace qrabi {

/// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ConfigError("not a number: '" + s + "'");
  return v;
}

/// One typed output cell, so the CSV and JSON writers share row data.
struct Cell {
  enum class Kind { Number, Integer, Text, Boolean, Empty };
  Kind kind = Kind::Empty;
  double num = 0.0;
  long long integer = 0;
  std::string text;
  bool flag = false;

  static Cell number(double v) {
    Cell c;
    c.kind = Kind::Number;
    c.num = v;
    return c;
  }
  static Cell integer_of(long long v) {
    Cell c;
    c.kind = Kind::Integer;
    c.integer = v;
    return c;
  }
  static Cell text_of(std::string v) {
    Cell c;
    c.kind = Kind::Text;
    c.text = std::move(v);
    return c;
  }
  static Cell boolean(bool v) {
    Cell c;
    c.kind = Kind::Boolean;
    c.flag = v;
    return c;
  }
  static Cell empty() { return Cell{}; }
};

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline std::string cell_csv(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Number: return format_double(c.num);
    case Cell::Kind::Integer: return std::to_string(c.integer);
    case Cell::Kind::Text: return csv_escape(c.text);
    case Cell::Kind::Boolean: return c.flag ? "true" : "false";
    case Cell::Kind::Empty: return "";
  }
  return "";
}

inline nlohmann::json cell_json(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Number: return c.num;
    case Cell::Kind::Integer: return c.integer;
    case Cell::Kind::Text: return c.text;
    case Cell::Kind::Boolean: return c.flag;
    case Cell::Kind::Empty: return nullptr;
  }
  return nullptr;
}

/// Output of one command run: effective config, named columns, typed rows,
/// and a status block. Serializes to CSV ('#' comment lines carry the config
/// echo and status) or to JSON {config, rows, status}.
struct Table {
  std::vector<std::pair<std::string, Cell>> config_echo;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> status;
};

inline void write_csv(std::ostream& os, const Table& t) {
  for (const auto& [key, cell] : t.config_echo)
    os << "# " << key << "=" << cell_csv(cell) << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << csv_escape(t.columns[i]);
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << cell_csv(row[i]);
    os << "\n";
  }
  for (const auto& [key, cell] : t.status)
    os << "# status:" << key << "=" << cell_csv(cell) << "\n";
}

inline void write_json(std::ostream& os, const Table& t) {
  nlohmann::json config = nlohmann::json::object();
  for (const auto& [key, cell] : t.config_echo) config[key] = cell_json(cell);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i)
      obj[t.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  nlohmann::json status = nlohmann::json::object();
  for (const auto& [key, cell] : t.status) status[key] = cell_json(cell);
  nlohmann::json doc;
  doc["config"] = std::move(config);
  doc["rows"] = std::move(rows);
  doc["status"] = std::move(status);
  os << doc.dump(2) << "\n";
}

enum class OutputFormat { Csv, Json };

enum class ParitySelection { Plus, Minus, Both };

inline std::vector<Parity> selected_parities(ParitySelection sel) {
  switch (sel) {
    case ParitySelection::Plus: return {Parity::Plus};
    case ParitySelection::Minus: return {Parity::Minus};
    case ParitySelection::Both: return {Parity::Plus, Parity::Minus};
  }
  return {};
}

/// Effective configuration of one CLI run. Fully deterministic: there is no
/// seed anywhere, so a run is reproducible from the echo in its own output.
struct RunConfig {
  ModelFamily family = ModelFamily::TwoMode;
  double delta = 0.35;
  std::vector<double> g_values = {0.5};
  std::vector<BargmannQ> q_list;
  ParitySelection parity = ParitySelection::Both;
  double x_max = 8.0;
  OutputFormat format = OutputFormat::Csv;
  std::string out_path;  // empty: stdout
  Controls controls;

  // gscan
  double x_min = -1.0;
  int samples = 2000;
  // exceptional
  int n_min = 1;
  int n_max = 1;
  double scan_lo = 0.0;  // 0: automatic bracket
  double scan_hi = 0.0;
  bool solve_for_delta = false;
  // ed / crosscheck
  int n_levels = 8;
  bool allow_critical = false;
  // collapse
  int level_lo = 10;
  int level_hi = 20;
  // spectrum
  bool crosscheck = false;
};

inline void append_common_echo(Table& t, const RunConfig& cfg) {
  t.config_echo.emplace_back("family", Cell::text_of(family_name(cfg.family)));
  t.config_echo.emplace_back("delta", Cell::number(cfg.delta));
  if (cfg.g_values.size() == 1) {
    t.config_echo.emplace_back("g", Cell::number(cfg.g_values[0]));
  } else if (!cfg.g_values.empty()) {
    t.config_echo.emplace_back("g_start", Cell::number(cfg.g_values.front()));
    t.config_echo.emplace_back("g_stop", Cell::number(cfg.g_values.back()));
    t.config_echo.emplace_back("g_steps",
                               Cell::integer_of(static_cast<long long>(cfg.g_values.size())));
  }
  std::string qs;
  for (BargmannQ q : cfg.q_list) {
    if (!qs.empty()) qs += ",";
    qs += format_double(q.value());
  }
  t.config_echo.emplace_back("q", Cell::text_of(qs));
  t.config_echo.emplace_back(
      "parity", Cell::text_of(cfg.parity == ParitySelection::Plus    ? "plus"
                              : cfg.parity == ParitySelection::Minus ? "minus"
                                                                     : "both"));
  t.config_echo.emplace_back("x_max", Cell::number(cfg.x_max));
  t.config_echo.emplace_back("eps_tail", Cell::number(cfg.controls.series.eps_tail));
  t.config_echo.emplace_back("tail_window",
                             Cell::integer_of(cfg.controls.series.tail_window));
  t.config_echo.emplace_back("n_max_hard",
                             Cell::integer_of(cfg.controls.series.n_max_hard));
  t.config_echo.emplace_back("pole_guard",
                             Cell::number(cfg.controls.series.pole_guard));
  t.config_echo.emplace_back("grid_points",
                             Cell::integer_of(cfg.controls.root.grid_points));
  t.config_echo.emplace_back("tol_x", Cell::number(cfg.controls.root.tol_x));
  t.config_echo.emplace_back(
      "x_floor", cfg.controls.root.x_floor > 0.0
                     ? Cell::text_of("auto")
                     : Cell::number(cfg.controls.root.x_floor));
  t.config_echo.emplace_back("ed_n0", Cell::integer_of(cfg.controls.ed.n0));
  t.config_echo.emplace_back("ed_n_hard", Cell::integer_of(cfg.controls.ed.n_hard));
  t.config_echo.emplace_back("tol_ed", Cell::number(cfg.controls.ed.tol_ed));
}

}  // namespace qrabi
