#include "bbmc/bbmc.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "bbmc/config.hpp"
#include "bbmc/estimators.hpp"
#include "bbmc/harness.hpp"
#include "bbmc/report_io.hpp"

struct bbmc_config {
  bbmc::Config config;
};

struct bbmc_sweep {
  std::vector<bbmc::SweepRow> rows;
};

namespace {

thread_local std::string g_last_error;

bbmc_status fail(bbmc_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Maps exceptions escaping the C++ core onto status codes.
template <typename F>
bbmc_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const bbmc::ValidationError& e) {
    return fail(BBMC_ERR_VALIDATION, e.what());
  } catch (const bbmc::ConfigError& e) {
    return fail(BBMC_ERR_CONFIG, e.what());
  } catch (const bbmc::InsufficientDataError& e) {
    return fail(BBMC_ERR_INSUFFICIENT_DATA, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(BBMC_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(BBMC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BBMC_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bbmc::RunOptions to_cpp(const bbmc_run_options& o) { return {o.n_paths, o.seed, o.alpha, o.workers}; }

bbmc_estimate to_c(const bbmc::EstimatorResult& e) { return {e.mean, e.std_error, e.n_paths}; }
bbmc::EstimatorResult to_cpp(const bbmc_estimate& e) { return {e.mean, e.std_error, e.n_paths}; }

bbmc_mode to_c(bbmc::PricingMode m) {
  switch (m) {
    case bbmc::PricingMode::knock_in: return BBMC_MODE_KNOCK_IN;
    case bbmc::PricingMode::rebate: return BBMC_MODE_REBATE;
    default: return BBMC_MODE_KNOCK_OUT;
  }
}

bbmc::PricingMode to_cpp(bbmc_mode m) {
  switch (m) {
    case BBMC_MODE_KNOCK_OUT: return bbmc::PricingMode::knock_out;
    case BBMC_MODE_KNOCK_IN: return bbmc::PricingMode::knock_in;
    case BBMC_MODE_REBATE: return bbmc::PricingMode::rebate;
  }
  throw std::invalid_argument("unknown pricing mode");
}

bbmc_report to_c(const bbmc::PricingReport& r) {
  bbmc_report out{};
  out.mode = to_c(r.mode);
  out.steps = r.steps;
  out.seed = r.seed;
  out.alpha = r.alpha;
  out.q_s = to_c(r.q_s);
  out.q_upper = to_c(r.q_upper);
  out.q_indep = to_c(r.q_indep);
  out.q_lower = to_c(r.q_lower);
  out.has_exact = r.q_exact.has_value();
  if (r.q_exact) out.q_exact = to_c(*r.q_exact);
  out.gap = to_c(r.gap);
  out.vanilla = to_c(r.vanilla);
  out.q0 = {r.q0.value, r.q0.half_width};
  out.q1 = {r.q1.value, r.q1.half_width};
  out.q2 = {r.q2.value, r.q2.half_width};
  out.ci_low = r.ci.low;
  out.ci_high = r.ci.high;
  out.ordering_violations = r.ordering_violations;
  return out;
}

bbmc::PricingReport to_cpp(const bbmc_report& r) {
  bbmc::PricingReport out;
  out.mode = to_cpp(r.mode);
  out.steps = r.steps;
  out.seed = r.seed;
  out.alpha = r.alpha;
  out.q_s = to_cpp(r.q_s);
  out.q_upper = to_cpp(r.q_upper);
  out.q_indep = to_cpp(r.q_indep);
  out.q_lower = to_cpp(r.q_lower);
  if (r.has_exact) out.q_exact = to_cpp(r.q_exact);
  out.gap = to_cpp(r.gap);
  out.vanilla = to_cpp(r.vanilla);
  out.q0 = {r.q0.value, r.q0.half_width};
  out.q1 = {r.q1.value, r.q1.half_width};
  out.q2 = {r.q2.value, r.q2.half_width};
  out.ci = {r.ci_low, r.ci_high};
  out.ordering_violations = r.ordering_violations;
  return out;
}

bbmc_status adopt_config(bbmc::Config cfg, bbmc_config** out) {
  // Construction validates and factorises; the problem itself is rebuilt per run.
  bbmc::PricingProblem check(cfg.model, cfg.option);
  *out = new bbmc_config{std::move(cfg)};
  return BBMC_OK;
}

std::string read_file(const char* path) {
  std::ifstream in(path);
  if (!in) throw bbmc::ConfigError(std::string("cannot open ") + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

extern "C" {

const char* bbmc_version(void) { return "1.0.0"; }

const char* bbmc_last_error(void) { return g_last_error.c_str(); }

void bbmc_string_free(char* s) { std::free(s); }

void bbmc_run_options_init(bbmc_run_options* options) {
  if (options) *options = {100000, 1, 0.05, 0};
}

void bbmc_table_options_init(bbmc_table_options* options) {
  if (options) *options = {0, 20260101, nullptr, 0, 0, nullptr};
}

bbmc_status bbmc_config_load(const char* path, bbmc_config** out) {
  return guarded([&] {
    if (!path || !out) return fail(BBMC_ERR_ARGUMENT, "null argument");
    return adopt_config(bbmc::load_config(path), out);
  });
}

bbmc_status bbmc_config_parse(const char* json, bbmc_config** out) {
  return guarded([&] {
    if (!json || !out) return fail(BBMC_ERR_ARGUMENT, "null argument");
    return adopt_config(bbmc::parse_config(json), out);
  });
}

void bbmc_config_free(bbmc_config* config) { delete config; }

size_t bbmc_config_assets(const bbmc_config* config) { return config ? config->config.model.assets : 0; }

size_t bbmc_config_steps(const bbmc_config* config) { return config ? config->config.model.grid.steps() : 0; }

bbmc_status bbmc_config_set_steps(bbmc_config* config, size_t steps) {
  return guarded([&] {
    if (!config) return fail(BBMC_ERR_ARGUMENT, "null config");
    if (steps == 0) return fail(BBMC_ERR_ARGUMENT, "steps must be at least 1");
    config->config.model = config->config.model.regridded(steps);
    return BBMC_OK;
  });
}

void bbmc_config_run_options(const bbmc_config* config, bbmc_run_options* out) {
  if (!out) return;
  bbmc_run_options_init(out);
  if (!config) return;
  out->n_paths = config->config.run.paths;
  out->seed = config->config.run.seed;
  out->alpha = config->config.run.alpha;
}

size_t bbmc_config_sweep_m(const bbmc_config* config, size_t* out, size_t capacity) {
  if (!config) return 0;
  const auto& m = config->config.run.m_values;
  for (size_t i = 0; out && i < m.size() && i < capacity; ++i) out[i] = m[i];
  return m.size();
}

bbmc_status bbmc_price(const bbmc_config* config, const bbmc_run_options* options, bbmc_report* out) {
  return guarded([&] {
    if (!config || !options || !out) return fail(BBMC_ERR_ARGUMENT, "null argument");
    const bbmc::PricingProblem problem(config->config.model, config->config.option);
    *out = to_c(bbmc::run(problem, to_cpp(*options)));
    return BBMC_OK;
  });
}

bbmc_status bbmc_price_mode(const bbmc_config* config, bbmc_mode mode, const bbmc_run_options* options,
                            bbmc_report* out) {
  return guarded([&] {
    if (!config || !options || !out) return fail(BBMC_ERR_ARGUMENT, "null argument");
    const bbmc::PricingProblem problem(config->config.model, config->config.option);
    const bbmc::RunOptions opts = to_cpp(*options);
    switch (to_cpp(mode)) {
      case bbmc::PricingMode::knock_out: *out = to_c(bbmc::price(problem, opts)); break;
      case bbmc::PricingMode::knock_in: *out = to_c(bbmc::knock_in_price(problem, opts)); break;
      case bbmc::PricingMode::rebate: *out = to_c(bbmc::rebate_price(problem, opts)); break;
    }
    return BBMC_OK;
  });
}

bbmc_status bbmc_report_format(const bbmc_report* report, const char* label, bbmc_format format, char** out) {
  return guarded([&] {
    if (!report || !out) return fail(BBMC_ERR_ARGUMENT, "null argument");
    bbmc::SweepRow row{label ? label : "", report->steps, to_cpp(*report)};
    if (format == BBMC_FORMAT_JSON) {
      auto j = bbmc::report_to_json(row.report);
      j["label"] = row.label;
      *out = dup_string(j.dump(2) + "\n");
    } else {
      *out = dup_string(bbmc::rows_to_csv({row}));
    }
    return BBMC_OK;
  });
}

bbmc_status bbmc_sweep_run(const bbmc_config* config, const size_t* m_values, size_t count,
                           const bbmc_run_options* options, bbmc_sweep** out) {
  return guarded([&] {
    if (!config || !options || !out || (count && !m_values)) return fail(BBMC_ERR_ARGUMENT, "null argument");
    bbmc::SweepSpec spec;
    spec.m_values.assign(m_values, m_values + count);
    spec.run = to_cpp(*options);
    *out = new bbmc_sweep{bbmc::run_sweep(config->config, spec)};
    return BBMC_OK;
  });
}

bbmc_status bbmc_sweep_load(const char* path, bbmc_sweep** out) {
  return guarded([&] {
    if (!path || !out) return fail(BBMC_ERR_ARGUMENT, "null argument");
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    std::vector<bbmc::SweepRow> rows;
    if (first != std::string::npos && text[first] == '[') {
      try {
        rows = bbmc::rows_from_json(nlohmann::json::parse(text));
      } catch (const nlohmann::json::exception& e) {
        throw bbmc::ConfigError(std::string(path) + ": " + e.what());
      }
    } else {
      rows = bbmc::rows_from_csv(text);
    }
    *out = new bbmc_sweep{std::move(rows)};
    return BBMC_OK;
  });
}

void bbmc_sweep_free(bbmc_sweep* sweep) { delete sweep; }

size_t bbmc_sweep_size(const bbmc_sweep* sweep) { return sweep ? sweep->rows.size() : 0; }

bbmc_status bbmc_sweep_row(const bbmc_sweep* sweep, size_t index, size_t* m, bbmc_report* out) {
  return guarded([&] {
    if (!sweep || !out) return fail(BBMC_ERR_ARGUMENT, "null argument");
    if (index >= sweep->rows.size()) return fail(BBMC_ERR_ARGUMENT, "row index out of range");
    if (m) *m = sweep->rows[index].m;
    *out = to_c(sweep->rows[index].report);
    return BBMC_OK;
  });
}

bbmc_status bbmc_sweep_format(const bbmc_sweep* sweep, bbmc_format format, char** out) {
  return guarded([&] {
    if (!sweep || !out) return fail(BBMC_ERR_ARGUMENT, "null argument");
    *out = dup_string(format == BBMC_FORMAT_JSON ? bbmc::rows_to_json(sweep->rows).dump(2) + "\n"
                                                 : bbmc::rows_to_csv(sweep->rows));
    return BBMC_OK;
  });
}

bbmc_status bbmc_sweep_fit(const bbmc_sweep* sweep, bbmc_fit_kind kind, size_t min_m, bbmc_fit* out) {
  return guarded([&] {
    if (!sweep || !out) return fail(BBMC_ERR_ARGUMENT, "null argument");
    const auto k = kind == BBMC_FIT_POWER ? bbmc::FitKind::power : bbmc::FitKind::exponential;
    const auto fit = bbmc::fit_convergence(bbmc::gap_points(sweep->rows), k, min_m);
    *out = {kind, fit.slope, fit.intercept, fit.r_squared, fit.points_used.size()};
    return BBMC_OK;
  });
}

bbmc_status bbmc_table_reproduce(int table_id, const bbmc_table_options* options, char** report_text,
                                 int* passed) {
  return guarded([&] {
    if (!options || !report_text || !passed) return fail(BBMC_ERR_ARGUMENT, "null argument");
    if (table_id < 1 || table_id > 4) return fail(BBMC_ERR_ARGUMENT, "table id must be 1, 2, 3 or 4");
    bbmc::TableOptions opts;
    if (options->n_paths) opts.n_paths = options->n_paths;
    opts.seed = options->seed;
    if (options->m_values && options->m_count)
      opts.m_values = std::vector<std::size_t>(options->m_values, options->m_values + options->m_count);
    opts.workers = options->workers;
    if (options->config_dir) opts.config_dir = options->config_dir;
    const bbmc::TableReport report = bbmc::reproduce_table(table_id, opts);
    *report_text = dup_string(report.text);
    *passed = report.passed() ? 1 : 0;
    return BBMC_OK;
  });
}

}  // extern "C"
