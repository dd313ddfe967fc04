#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>

#include "bbmc/config.hpp"
#include "bbmc/harness.hpp"
#include "bbmc/report_io.hpp"

using namespace bbmc;

namespace {

const char* kMinimal = R"({
  "name": "mini",
  "assets": 1,
  "spot": [100],
  "rate": 0.1,
  "grid": {"maturity": 0.5, "steps": 1},
  "regimes": [{"sigma": [0.3], "corr": [[1]], "lower": [90], "upper": [null]}],
  "option": {"kind": "call", "strike": 100},
  "run": {"paths": 5000, "seed": 8, "m": [1, 4]}
})";

std::filesystem::path config_dir() { return default_config_dir(); }

SweepSpec small_sweep(std::vector<std::size_t> m, std::uint64_t n = 4000) {
  SweepSpec s;
  s.m_values = std::move(m);
  s.run.n_paths = n;
  s.run.seed = 12;
  s.run.workers = 1;
  return s;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("parse a minimal configuration") {
    const Config c = parse_config(kMinimal);
    CHECK(c.name == "mini");
    CHECK(c.model.assets == 1);
    CHECK(c.model.regimes.size() == 1);
    CHECK(c.model.regimes[0].mu[0] == 0.1);
    CHECK(*c.model.regimes[0].lower[0] == 90.0);
    CHECK_FALSE(c.model.regimes[0].upper[0]);
    CHECK(c.option.knock == KnockType::out);
    CHECK(c.run.paths == 5000);
    CHECK(c.run.m_values == std::vector<std::size_t>{1, 4});
  }

  TEST_CASE("malformed configurations") {
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config("{}"), ConfigError);
    std::string bad = kMinimal;
    bad.replace(bad.find("[100]"), 5, "[100, 1]");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
    bad = kMinimal;
    bad.replace(bad.find("\"call\""), 6, "\"put\"");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/file.json"), ConfigError);
  }

  TEST_CASE("shipped configurations load and validate") {
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(config_dir())) {
      if (entry.path().extension() != ".json") continue;
      INFO(entry.path().string());
      const Config c = load_config(entry.path());
      CHECK(validate(c.model, c.option).ok());
      CHECK_FALSE(c.run.m_values.empty());
      ++count;
    }
    CHECK(count == 11);
  }

  TEST_CASE("CSV and JSON round trip exactly") {
    const auto rows = run_sweep(parse_config(kMinimal), small_sweep({1, 4}));
    const auto from_json = rows_from_json(nlohmann::json::parse(rows_to_json(rows).dump()));
    const auto from_csv = rows_from_csv(rows_to_csv(rows));
    REQUIRE(from_json.size() == rows.size());
    REQUIRE(from_csv.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const PricingReport& a = rows[i].report;
      for (const PricingReport* b : {&from_json[i].report, &from_csv[i].report}) {
        CHECK(b->q_s.mean == a.q_s.mean);
        CHECK(b->q_upper.std_error == a.q_upper.std_error);
        CHECK(b->q_indep.mean == a.q_indep.mean);
        CHECK(b->q_lower.n_paths == a.q_lower.n_paths);
        CHECK(b->gap.mean == a.gap.mean);
        CHECK(b->vanilla.mean == a.vanilla.mean);
        REQUIRE(b->q_exact.has_value());
        CHECK(b->q_exact->mean == a.q_exact->mean);
        CHECK(b->q0.half_width == a.q0.half_width);
        CHECK(b->ci.low == a.ci.low);
        CHECK(b->ci.high == a.ci.high);
      }
      CHECK(from_json[i].report.ordering_violations == a.ordering_violations);
      CHECK(from_json[i].report.seed == a.seed);
      CHECK(from_csv[i].m == rows[i].m);
      CHECK(from_csv[i].label == "mini");
    }
    CHECK(rows_to_csv(from_csv) == rows_to_csv(rows));
  }

  TEST_CASE("malformed CSV") {
    CHECK_THROWS_AS(rows_from_csv("nonsense\n"), ConfigError);
    CHECK_THROWS_AS(rows_from_csv(std::string(kCsvHeader) + "\nmini,1,q_s,abc,0,10\n"), ConfigError);
  }

  TEST_CASE("sweeps are reproducible") {
    const Config c = parse_config(kMinimal);
    CHECK(rows_to_csv(run_sweep(c, small_sweep({1, 2, 8}))) == rows_to_csv(run_sweep(c, small_sweep({1, 2, 8}))));
    const auto single = run_sweep(c, small_sweep({1}));
    REQUIRE(single.size() == 1);
    CHECK(single[0].m == 1);
    CHECK_THROWS_AS(run_sweep(c, small_sweep({4, 2})), std::invalid_argument);
    CHECK_THROWS_AS(run_sweep(c, small_sweep({0, 2})), std::invalid_argument);
    CHECK_THROWS_AS(run_sweep(c, small_sweep({})), std::invalid_argument);
  }

  TEST_CASE("the standard estimator decreases with M") {
    const Config c = load_config(config_dir() / "table1a.json");
    const auto rows = run_sweep(c, small_sweep({1, 2, 4, 16, 64}, 20000));
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& a = rows[i - 1].report.q_s;
      const auto& b = rows[i].report.q_s;
      CHECK(b.mean <= a.mean + 4.0 * std::hypot(a.std_error, b.std_error));
    }
  }

  TEST_CASE("convergence fits recover known rates") {
    std::vector<GapPoint> exp_pts, pow_pts;
    for (std::size_t m : {1, 2, 4, 8, 16}) {
      exp_pts.push_back({m, 3.0 * std::exp(-0.4 * static_cast<double>(m)), 1e-9});
      pow_pts.push_back({m, 2.0 * std::pow(static_cast<double>(m), -2.0), 1e-9});
    }
    const auto fe = fit_convergence(exp_pts, FitKind::exponential);
    CHECK(fe.slope == doctest::Approx(-0.4));
    CHECK(fe.intercept == doctest::Approx(std::log(3.0)));
    CHECK(fe.r_squared == doctest::Approx(1.0));
    const auto fp = fit_convergence(pow_pts, FitKind::power, 2);
    CHECK(fp.slope == doctest::Approx(-2.0));
    CHECK(fp.points_used == std::vector<std::size_t>{2, 4, 8, 16});
  }

  TEST_CASE("fits reject noise-dominated rows") {
    std::vector<GapPoint> pts{{1, 1.0, 0.01}, {2, 0.5, 0.01}, {4, 0.03, 0.01}, {8, 0.0, 0.01}};
    CHECK_THROWS_AS(fit_convergence(pts, FitKind::power), InsufficientDataError);
  }

  TEST_CASE("gap falls back to the bound errors") {
    SweepRow row;
    row.m = 4;
    row.report.q_upper = {2.0, 0.03, 100};
    row.report.q_lower = {1.5, 0.04, 100};
    const auto pts = gap_points({row});
    CHECK(pts[0].gap == doctest::Approx(0.5));
    CHECK(pts[0].std_error == doctest::Approx(0.05));
  }

  TEST_CASE("table reproduction rejects unknown tables") {
    CHECK_THROWS_AS(reproduce_table(5, TableOptions{}), std::invalid_argument);
  }

  TEST_CASE("table 1 at reduced size") {
    TableOptions o;
    o.n_paths = 20000;
    o.m_values = std::vector<std::size_t>{1, 16};
    o.workers = 1;
    const TableReport rep = reproduce_table(1, o);
    CHECK(rep.rows.size() == 4);
    CHECK(rep.text.find("8.794") != std::string::npos);
    for (const auto& c : rep.checks) {
      INFO(c.name << ": " << c.detail);
      CHECK(c.passed);
    }
  }
}
