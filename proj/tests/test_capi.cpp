// Exercises the shared library through its C interface only.
#include <doctest.h>

#include <cstring>
#include <string>

#include "bbmc/bbmc.h"

namespace {

const char* kConfig = R"({
  "name": "capi",
  "assets": 2,
  "spot": [100, 100],
  "rate": 0.1,
  "grid": {"maturity": 1.0, "steps": 1},
  "regimes": [{"sigma": [0.3, 0.3], "corr": [[1, 0.5], [0.5, 1]], "lower": [90, 90], "upper": [null, null]}],
  "option": {"kind": "call", "strike": 100},
  "run": {"paths": 3000, "seed": 4, "alpha": 0.1, "m": [1, 2, 4, 8]}
})";

struct Config {
  bbmc_config* p = nullptr;
  ~Config() { bbmc_config_free(p); }
};

struct Sweep {
  bbmc_sweep* p = nullptr;
  ~Sweep() { bbmc_sweep_free(p); }
};

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("version and defaults") {
    CHECK(std::string(bbmc_version()) == "1.0.0");
    bbmc_run_options o;
    bbmc_run_options_init(&o);
    CHECK(o.n_paths == 100000);
    CHECK(o.alpha == 0.05);
    bbmc_table_options t;
    bbmc_table_options_init(&t);
    CHECK(t.n_paths == 0);
    CHECK(t.m_values == nullptr);
  }

  TEST_CASE("configuration handles") {
    Config c;
    REQUIRE(bbmc_config_parse(kConfig, &c.p) == BBMC_OK);
    CHECK(bbmc_config_assets(c.p) == 2);
    CHECK(bbmc_config_steps(c.p) == 1);
    CHECK(bbmc_config_set_steps(c.p, 16) == BBMC_OK);
    CHECK(bbmc_config_steps(c.p) == 16);
    CHECK(bbmc_config_set_steps(c.p, 0) == BBMC_ERR_ARGUMENT);

    bbmc_run_options o;
    bbmc_config_run_options(c.p, &o);
    CHECK(o.n_paths == 3000);
    CHECK(o.seed == 4);
    CHECK(o.alpha == 0.1);

    size_t m[8];
    CHECK(bbmc_config_sweep_m(c.p, nullptr, 0) == 4);
    CHECK(bbmc_config_sweep_m(c.p, m, 2) == 4);
    CHECK(m[0] == 1);
    CHECK(m[1] == 2);
  }

  TEST_CASE("error codes") {
    bbmc_config* c = nullptr;
    CHECK(bbmc_config_parse("{not json", &c) == BBMC_ERR_CONFIG);
    CHECK(c == nullptr);
    CHECK(std::strlen(bbmc_last_error()) > 0);
    CHECK(bbmc_config_load("/nonexistent.json", &c) == BBMC_ERR_CONFIG);
    CHECK(bbmc_config_parse(nullptr, &c) == BBMC_ERR_ARGUMENT);

    std::string on_barrier = kConfig;
    on_barrier.replace(on_barrier.find("[100, 100]"), 10, "[90, 100]");
    CHECK(bbmc_config_parse(on_barrier.c_str(), &c) == BBMC_ERR_VALIDATION);
    CHECK(std::string(bbmc_last_error()).find("spot") != std::string::npos);

    std::string indefinite = kConfig;
    indefinite.replace(indefinite.find("[[1, 0.5], [0.5, 1]]"), 20, "[[1, 1.5], [1.5, 1]]");
    CHECK(bbmc_config_parse(indefinite.c_str(), &c) == BBMC_ERR_VALIDATION);

    bbmc_report r;
    bbmc_run_options o;
    bbmc_run_options_init(&o);
    CHECK(bbmc_price(nullptr, &o, &r) == BBMC_ERR_ARGUMENT);
    char* text = nullptr;
    int passed = 0;
    bbmc_table_options t;
    bbmc_table_options_init(&t);
    CHECK(bbmc_table_reproduce(7, &t, &text, &passed) == BBMC_ERR_ARGUMENT);
  }

  TEST_CASE("pricing through the C interface") {
    Config c;
    REQUIRE(bbmc_config_parse(kConfig, &c.p) == BBMC_OK);
    bbmc_run_options o;
    bbmc_config_run_options(c.p, &o);
    o.workers = 2;
    bbmc_report ko, ki;
    REQUIRE(bbmc_price(c.p, &o, &ko) == BBMC_OK);
    REQUIRE(bbmc_price_mode(c.p, BBMC_MODE_KNOCK_IN, &o, &ki) == BBMC_OK);
    CHECK(ko.mode == BBMC_MODE_KNOCK_OUT);
    CHECK(ko.has_exact == 0);
    CHECK(ko.q_lower.mean <= ko.q_indep.mean);
    CHECK(ko.q_indep.mean <= ko.q_upper.mean);
    CHECK(ko.q_upper.mean <= ko.q_s.mean);
    CHECK(ko.ordering_violations == 0);
    CHECK(ko.q_upper.mean + ki.q_lower.mean == doctest::Approx(ko.vanilla.mean).epsilon(1e-12));
    CHECK(ko.ci_low <= ko.q_lower.mean);

    char* csv = nullptr;
    REQUIRE(bbmc_report_format(&ko, "x", BBMC_FORMAT_CSV, &csv) == BBMC_OK);
    CHECK(std::string(csv).rfind("label,m,estimator,mean,std_error,n_paths\n", 0) == 0);
    bbmc_string_free(csv);
    char* json = nullptr;
    REQUIRE(bbmc_report_format(&ko, "x", BBMC_FORMAT_JSON, &json) == BBMC_OK);
    CHECK(json[0] == '{');
    bbmc_string_free(json);
  }

  TEST_CASE("sweeps and fits") {
    Config c;
    REQUIRE(bbmc_config_parse(kConfig, &c.p) == BBMC_OK);
    bbmc_run_options o;
    bbmc_config_run_options(c.p, &o);
    const size_t m[] = {1, 2, 4, 8};
    Sweep s;
    REQUIRE(bbmc_sweep_run(c.p, m, 4, &o, &s.p) == BBMC_OK);
    CHECK(bbmc_sweep_size(s.p) == 4);
    size_t mm = 0;
    bbmc_report r;
    REQUIRE(bbmc_sweep_row(s.p, 2, &mm, &r) == BBMC_OK);
    CHECK(mm == 4);
    CHECK(r.steps == 4);
    CHECK(bbmc_sweep_row(s.p, 9, &mm, &r) == BBMC_ERR_ARGUMENT);

    const size_t bad[] = {4, 2};
    Sweep t;
    CHECK(bbmc_sweep_run(c.p, bad, 2, &o, &t.p) == BBMC_ERR_ARGUMENT);

    bbmc_fit fit;
    const bbmc_status st = bbmc_sweep_fit(s.p, BBMC_FIT_EXPONENTIAL, 1, &fit);
    CHECK((st == BBMC_OK || st == BBMC_ERR_INSUFFICIENT_DATA));
    if (st == BBMC_OK) CHECK(fit.points_used >= 3);
    CHECK(bbmc_sweep_fit(s.p, BBMC_FIT_POWER, 1000, &fit) == BBMC_ERR_INSUFFICIENT_DATA);

    char* csv = nullptr;
    REQUIRE(bbmc_sweep_format(s.p, BBMC_FORMAT_CSV, &csv) == BBMC_OK);
    const std::string text = csv;
    bbmc_string_free(csv);
    CHECK(text.find("capi,8,gap,") != std::string::npos);
  }
}
