#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include <json.hpp>

#include "qrabi/commands.hpp"

using namespace qrabi;
using Catch::Matchers::WithinAbs;

namespace {
RunConfig base_config() {
  RunConfig cfg;
  cfg.family = ModelFamily::TwoMode;
  cfg.delta = 0.35;
  cfg.g_values = {0.5};
  cfg.q_list = {BargmannQ::from_value(0.5)};
  return cfg;
}

std::string csv_of(const Table& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

std::string json_of(const Table& t) {
  std::ostringstream os;
  write_json(os, t);
  return os.str();
}
}  // namespace

TEST_CASE("number formatting round-trips exactly") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 1e300, 5e-324, 0.0,
                   0.696195015782216, 1.4399995673617543, -0.35, 123456789.123456789}) {
    std::string s = format_double(v);
    double back = parse_double(s);
    REQUIRE(back == v);
    REQUIRE(s.size() <= 24);
  }
  REQUIRE_THROWS_AS(parse_double("1.2.3"), ConfigError);
  REQUIRE_THROWS_AS(parse_double("abc"), ConfigError);
}

TEST_CASE("csv escaping") {
  REQUIRE(csv_escape("plain") == "plain");
  REQUIRE(csv_escape("a,b") == "\"a,b\"");
  REQUIRE(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("gscan table") {
  RunConfig cfg = base_config();
  cfg.x_min = -1.0;
  cfg.x_max = 5.0;
  cfg.samples = 2000;

  Table t = cmd_gscan(cfg);
  SECTION("row-count accounting") {
    long long rows = 0, skipped = 0;
    for (const auto& [key, cell] : t.status) {
      if (key == "rows") rows = cell.integer;
      if (key == "skipped_near_poles") skipped = cell.integer;
    }
    REQUIRE(rows + skipped == 2000);
    REQUIRE(skipped <= 8);
    REQUIRE(static_cast<long long>(t.rows.size()) == rows);
    REQUIRE(t.columns ==
            std::vector<std::string>{"x", "g_plus", "g_minus", "n_terms",
                                     "pole_distance"});
  }
  SECTION("byte-identical rerun") {
    Table again = cmd_gscan(cfg);
    REQUIRE(csv_of(t) == csv_of(again));
    REQUIRE(json_of(t) == json_of(again));
  }
  SECTION("config echo carries the effective numeric controls") {
    std::string csv = csv_of(t);
    REQUIRE(csv.find("# family=two-mode\n") != std::string::npos);
    REQUIRE(csv.find("# delta=0.35\n") != std::string::npos);
    REQUIRE(csv.find("# pole_guard=1e-06\n") != std::string::npos);
    REQUIRE(csv.find("# n_max_hard=20000\n") != std::string::npos);
    REQUIRE(csv.find("# samples=2000\n") != std::string::npos);
  }
  SECTION("a run is reproducible from its own output echo") {
    std::istringstream is(csv_of(t));
    std::map<std::string, std::string> echo;
    std::string line;
    while (std::getline(is, line)) {
      if (line.rfind("# ", 0) != 0) break;
      auto eq = line.find('=');
      echo[line.substr(2, eq - 2)] = line.substr(eq + 1);
    }
    RunConfig redo;
    redo.family = echo.at("family") == "two-mode" ? ModelFamily::TwoMode
                                                  : ModelFamily::TwoPhoton;
    redo.delta = parse_double(echo.at("delta"));
    redo.g_values = {parse_double(echo.at("g"))};
    redo.q_list = {BargmannQ::from_value(parse_double(echo.at("q")))};
    redo.x_max = parse_double(echo.at("x_max"));
    redo.x_min = parse_double(echo.at("x_min"));
    redo.samples = static_cast<int>(parse_double(echo.at("samples")));
    redo.controls.series.eps_tail = parse_double(echo.at("eps_tail"));
    redo.controls.series.pole_guard = parse_double(echo.at("pole_guard"));
    REQUIRE(csv_of(cmd_gscan(redo)) == csv_of(t));
  }
  SECTION("json shape") {
    nlohmann::json doc = nlohmann::json::parse(json_of(t));
    REQUIRE(doc.contains("config"));
    REQUIRE(doc.contains("rows"));
    REQUIRE(doc.contains("status"));
    REQUIRE(doc["rows"].is_array());
    REQUIRE(doc["rows"][0]["x"].is_number());
    REQUIRE(doc["rows"][0]["g_plus"].is_number());
    REQUIRE(doc["config"]["delta"].get<double>() == 0.35);
  }
  SECTION("validation") {
    RunConfig bad = cfg;
    bad.samples = 1;
    REQUIRE_THROWS_AS(cmd_gscan(bad), ConfigError);
    bad = cfg;
    bad.x_min = 6.0;
    REQUIRE_THROWS_AS(cmd_gscan(bad), ConfigError);
    bad = cfg;
    bad.q_list = {BargmannQ::from_value(0.5), BargmannQ::from_value(1.0)};
    REQUIRE_THROWS_AS(cmd_gscan(bad), ConfigError);
    bad = cfg;
    bad.delta = 0.0;
    REQUIRE_THROWS_AS(cmd_gscan(bad), ConfigError);
    bad = cfg;
    bad.g_values = {1.0};
    REQUIRE_THROWS_AS(cmd_gscan(bad), ConfigError);
  }
}

TEST_CASE("spectrum table") {
  RunConfig cfg = base_config();
  cfg.x_max = 3.0;

  SECTION("single-g run equals the matching sweep column") {
    Table single = cmd_spectrum(cfg);
    RunConfig sweep_cfg = cfg;
    sweep_cfg.g_values = {0.4, 0.5, 0.6};
    Table sweep = cmd_spectrum(sweep_cfg);
    std::vector<std::vector<Cell>> matching;
    for (const auto& row : sweep.rows)
      if (row[0].num == 0.5) matching.push_back(row);
    REQUIRE(!matching.empty());
    REQUIRE(matching.size() == single.rows.size());
    for (std::size_t i = 0; i < matching.size(); ++i)
      for (std::size_t j = 0; j < matching[i].size(); ++j)
        REQUIRE(cell_csv(matching[i][j]) == cell_csv(single.rows[i][j]));
  }
  SECTION("crosscheck appends tight diagonalization deltas") {
    RunConfig xc = cfg;
    xc.crosscheck = true;
    Table t = cmd_spectrum(xc);
    REQUIRE(t.columns.back() == "ed_converged");
    REQUIRE(!t.rows.empty());
    for (const auto& row : t.rows) {
      REQUIRE(row[8].text == "ok");
      REQUIRE(row[10].num < 1e-8);
    }
  }
  SECTION("delta=0 is a config error pointing at the ed path") {
    RunConfig bad = cfg;
    bad.delta = 0.0;
    REQUIRE_THROWS_AS(cmd_spectrum(bad), ConfigError);
  }
}

TEST_CASE("ed, collapse and exceptional tables") {
  SECTION("ed rows mirror ed_spectrum") {
    RunConfig cfg = base_config();
    cfg.n_levels = 4;
    Table t = cmd_ed(cfg);
    REQUIRE(t.rows.size() == 8);  // 1 q x 2 parities x 4 levels
    auto direct = ed_spectrum(ModelParams{0.35, 0.5, ModelFamily::TwoMode},
                              BargmannQ::from_value(0.5), Parity::Plus, 4);
    for (int i = 0; i < 4; ++i) REQUIRE(t.rows[i][3].num == direct[i].energy);
    REQUIRE(t.rows[0][1].text == "plus");
    REQUIRE(t.rows[4][1].text == "minus");
  }
  SECTION("ed at delta=0 serves the analytic spectrum") {
    RunConfig cfg = base_config();
    cfg.delta = 0.0;
    cfg.n_levels = 3;
    Table t = cmd_ed(cfg);
    double beta = std::sqrt(0.75);
    REQUIRE_THAT(t.rows[0][3].num, WithinAbs(2.0 * beta * 0.5 - 1.0, 1e-9));
  }
  SECTION("collapse table kinds and exact reference column") {
    RunConfig cfg = base_config();
    cfg.g_values = {0.9};
    cfg.level_lo = 3;
    cfg.level_hi = 6;
    Table t = cmd_collapse(cfg);
    REQUIRE(t.rows.size() == 4);  // one pole row + three spacings
    REQUIRE(t.rows[0][1].text == "pole");
    REQUIRE(t.columns[1] == "classification");
    REQUIRE(t.rows[0][5].num == 1.0);
    double beta = std::sqrt(1.0 - 0.81);
    for (const auto& row : t.rows)
      REQUIRE_THAT(row[4].num, WithinAbs(2.0 * beta, 1e-15));
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
      REQUIRE(t.rows[i][1].text == "level");
      REQUIRE_THAT(t.rows[i][3].num / t.rows[i][4].num,
                   WithinAbs(t.rows[i][5].num, 1e-14));
    }
  }
  SECTION("exceptional rows carry verification") {
    RunConfig cfg = base_config();
    cfg.n_min = 1;
    cfg.n_max = 1;
    Table t = cmd_exceptional(cfg);
    REQUIRE(t.rows.size() == 1);
    REQUIRE_THAT(t.rows[0][2].num, WithinAbs(0.696195015782216, 1e-9));
    REQUIRE(t.rows[0][6].flag);
  }
  SECTION("empty scan bracket yields an empty table") {
    RunConfig cfg = base_config();
    cfg.scan_lo = 0.1;
    cfg.scan_hi = 0.3;
    Table t = cmd_exceptional(cfg);
    REQUIRE(t.rows.empty());
  }
}

#ifdef QRABI_CLI_PATH
TEST_CASE("cli exit codes") {
  std::string cli = QRABI_CLI_PATH;
  auto run = [&](const std::string& args) {
    int rc = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
  };
  REQUIRE(run("ed --delta 0.35 --g 0.5 --q 0.5 --levels 2") == 0);
  REQUIRE(run("spectrum --delta 0 --g 0.5 --q 0.5") == 1);
  REQUIRE(run("spectrum --not-a-flag") == 1);
  REQUIRE(run("gscan --delta 0.35 --g 0.5 --q 0.5 --x-min -1 --x-max 2 "
              "--samples 50 --n-max-hard 3") == 2);
  REQUIRE(run("--help") == 0);
}
#endif
