#include "bbmc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "bbmc/published.hpp"

#ifndef BBMC_DEFAULT_CONFIG_DIR
#define BBMC_DEFAULT_CONFIG_DIR "configs"
#endif

namespace bbmc {

std::vector<SweepRow> run_sweep(const Config& config, const SweepSpec& spec,
                                const std::function<void(const SweepRow&)>& on_row) {
  if (spec.m_values.empty()) throw std::invalid_argument("sweep needs at least one M");
  for (std::size_t i = 0; i < spec.m_values.size(); ++i) {
    if (spec.m_values[i] < 1) throw std::invalid_argument("M values must be at least 1");
    if (i > 0 && spec.m_values[i] <= spec.m_values[i - 1])
      throw std::invalid_argument("M values must be strictly increasing");
  }

  std::vector<SweepRow> rows;
  for (std::size_t m : spec.m_values) {
    const PricingProblem problem(config.model.regridded(m), config.option);
    SweepRow row{spec.label.empty() ? config.name : spec.label, m, run(problem, spec.run)};
    if (on_row) on_row(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<GapPoint> gap_points(const std::vector<SweepRow>& rows) {
  std::vector<GapPoint> out;
  for (const auto& row : rows) {
    const PricingReport& r = row.report;
    GapPoint p{row.m, r.q_upper.mean - r.q_lower.mean, 0.0};
    if (r.gap.n_paths > 0) {
      p.gap = r.gap.mean;
      p.std_error = r.gap.std_error;
    } else {
      p.std_error = std::hypot(r.q_upper.std_error, r.q_lower.std_error);
    }
    out.push_back(p);
  }
  return out;
}

ConvergenceFit fit_convergence(const std::vector<GapPoint>& points, FitKind kind, std::size_t min_m) {
  std::vector<double> xs, ys;
  ConvergenceFit fit;
  fit.kind = kind;
  for (const auto& p : points) {
    if (p.m < min_m || !(p.gap > 0.0) || !(p.gap > 4.0 * p.std_error)) continue;
    const double m = static_cast<double>(p.m);
    xs.push_back(kind == FitKind::exponential ? m : std::log(m));
    ys.push_back(std::log(p.gap));
    fit.points_used.push_back(p.m);
  }
  if (xs.size() < 3)
    throw InsufficientDataError("only " + std::to_string(xs.size()) +
                                " sweep rows have Q_U - Q_L above 4 standard errors; at least 3 are "
                                "needed, increase the path count");

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

std::filesystem::path default_config_dir() { return BBMC_DEFAULT_CONFIG_DIR; }

bool TableReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const GoldenCheck& c) { return c.passed; });
}

namespace {

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

std::optional<EstimatorResult> estimator(const PricingReport& r, const std::string& key) {
  if (key == "q") return r.q_exact;
  if (key == "q_s") return r.q_s;
  if (key == "q_upper") return r.q_upper;
  if (key == "q_indep") return r.q_indep;
  if (key == "q_lower") return r.q_lower;
  const PointEstimate* p = key == "q0" ? &r.q0 : key == "q1" ? &r.q1 : key == "q2" ? &r.q2 : nullptr;
  if (p) return EstimatorResult{p->value, p->half_width, r.q_s.n_paths};
  return std::nullopt;
}

const char* display(const std::string& key) {
  static const std::map<std::string, const char*> names{
      {"q", "Q"},     {"q_s", "Q_S"}, {"q_upper", "Q_U"}, {"q_indep", "Q_I"},
      {"q_lower", "Q_L"}, {"q0", "Q_0"}, {"q1", "Q_1"},  {"q2", "Q_2"}};
  auto it = names.find(key);
  return it == names.end() ? key.c_str() : it->second;
}

class Checker {
 public:
  explicit Checker(std::vector<GoldenCheck>& out) : out_(out) {}

  // |computed - exact| <= k * own standard error.
  void against_exact(const std::string& what, const EstimatorResult& e, double exact, double k = 3.0) {
    const double z = e.std_error > 0.0 ? (e.mean - exact) / e.std_error : (e.mean == exact ? 0.0 : INFINITY);
    add(what, std::abs(z) <= k,
        format("%.5g (%.2g) vs exact %.5g, z = %+.2f, limit %.0f", e.mean, e.std_error, exact, z, k));
  }

  // |computed - printed| <= k * combined standard error of both estimates.
  void against_printed(const std::string& what, const EstimatorResult& e, published::Cell c, double k = 3.0) {
    const double se = std::hypot(e.std_error, c.std_error);
    const double z = se > 0.0 ? (e.mean - c.value) / se : (e.mean == c.value ? 0.0 : INFINITY);
    add(what, std::abs(z) <= k,
        format("%.5g (%.2g) vs printed %.5g (%.2g), z = %+.2f, limit %.0f", e.mean, e.std_error, c.value,
               c.std_error, z, k));
  }

  // |point - exact| <= k * half-width.
  void point_against_exact(const std::string& what, const PointEstimate& p, double exact, double k = 3.0) {
    const double z = p.half_width > 0.0 ? (p.value - exact) / p.half_width : (p.value == exact ? 0.0 : INFINITY);
    add(what, std::abs(z) <= k,
        format("%.5g +/- %.2g vs exact %.5g, z = %+.2f, limit %.0f", p.value, p.half_width, exact, z, k));
  }

  void add(const std::string& what, bool ok, const std::string& detail) { out_.push_back({what, ok, detail}); }

 private:
  std::vector<GoldenCheck>& out_;
};

void append_comparison(std::string& text, const published::Experiment& exp, const SweepRow& row) {
  const published::Row* pub = exp.row(row.m);
  text += format("  M = %zu\n", row.m);
  static const char* order[] = {"q", "q_upper", "q_indep", "q_lower", "q_s", "q0", "q1", "q2"};
  for (const char* key : order) {
    const auto est = estimator(row.report, key);
    if (!est) continue;
    std::string line = format("    %-4s %10.4f (%.4f)", display(key), est->mean, est->std_error);
    if (pub) {
      if (auto it = pub->cells.find(key); it != pub->cells.end()) {
        const double se = std::hypot(est->std_error, it->second.std_error);
        const double z = se > 0.0 ? (est->mean - it->second.value) / se : 0.0;
        line += format("   printed %8.4g (%.3g)   z = %+.2f", it->second.value, it->second.std_error, z);
      }
    }
    text += line + "\n";
  }
}

std::string label_m(const std::string& what, std::size_t m) { return what + " @ M=" + std::to_string(m); }

void table1_checks(const published::Experiment& exp, const std::vector<SweepRow>& rows, Checker& check) {
  for (const auto& row : rows) {
    if (row.report.q_exact) check.against_exact(label_m(exp.config + " Q", row.m), *row.report.q_exact, *exp.exact);
    else check.add(label_m(exp.config + " Q", row.m), false, "exact-weight estimator missing");
    if (row.m == 1 && exp.config == "table1a")
      check.against_printed(label_m(exp.config + " Q_S", 1), row.report.q_s, exp.row(1)->cells.at("q_s"));
  }
}

void table2_checks(const published::Experiment& exp, const std::vector<SweepRow>& rows, Checker& check) {
  for (const auto& row : rows) {
    const PricingReport& r = row.report;
    if (row.m == 16) {
      check.against_exact(label_m("Q_U", 16), r.q_upper, *exp.exact);
      check.against_exact(label_m("Q_I", 16), r.q_indep, *exp.exact);
      check.against_exact(label_m("Q_L", 16), r.q_lower, *exp.exact);
    }
    if (row.m == 1) {
      const auto& cells = exp.row(1)->cells;
      check.against_printed(label_m("Q_U", 1), r.q_upper, cells.at("q_upper"));
      check.against_printed(label_m("Q_I", 1), r.q_indep, cells.at("q_indep"));
      check.against_printed(label_m("Q_L", 1), r.q_lower, cells.at("q_lower"));
      check.against_printed(label_m("Q_S", 1), r.q_s, cells.at("q_s"));
      check.against_printed(label_m("Q_1", 1), *estimator(r, "q1"), cells.at("q1"));
    }
  }
}

void table3_checks(const published::Experiment& exp, const std::vector<SweepRow>& rows, Checker& check) {
  const double exact = *exp.exact;
  const std::string& c = exp.config;
  for (const auto& row : rows) {
    const PricingReport& r = row.report;
    if (c == "table3_rho-1") {
      if (row.m == 1) check.add(label_m(c + " Q_L == 0", 1), r.q_lower.mean == 0.0, format("Q_L = %.17g", r.q_lower.mean));
      if (row.m >= 8) {
        check.point_against_exact(label_m(c + " Q_0", row.m), r.q0, exact);
        check.against_exact(label_m(c + " Q_I", row.m), r.q_indep, exact);
        check.against_exact(label_m(c + " Q_L", row.m), r.q_lower, exact);
      }
      if (row.m >= 16) check.against_exact(label_m(c + " Q_U", row.m), r.q_upper, exact);
      continue;
    }
    if (row.m == 64) check.point_against_exact(label_m(c + " Q_0", 64), r.q0, exact);
    if (c == "table3_rho0") check.against_exact(label_m(c + " Q_I", row.m), r.q_indep, exact);
    if (c == "table3_rho1" && row.m == 1) check.against_exact(label_m(c + " Q_U", 1), r.q_upper, exact);
  }
}

void table4_checks(const published::Experiment& exp, const std::vector<SweepRow>& rows, Checker& check) {
  const std::string& c = exp.config;
  for (const auto& row : rows) {
    const PricingReport& r = row.report;
    check.add(label_m(c + " path-wise Q_L <= Q_I <= Q_U <= Q_S", row.m), r.ordering_violations == 0,
              format("%llu violating paths", static_cast<unsigned long long>(r.ordering_violations)));
    if (row.m == 64) {
      const double limit = 2.0 * std::hypot(r.q_upper.std_error, r.q_lower.std_error);
      check.add(label_m(c + " Q_U - Q_L < 2 combined se", 64), r.q_upper.mean - r.q_lower.mean < limit,
                format("gap %.4g, limit %.4g", r.q_upper.mean - r.q_lower.mean, limit));
    }
    if (row.m == 1 || row.m == 8 || row.m == 64) {
      const auto& cells = exp.row(row.m)->cells;
      check.against_printed(label_m(c + " Q_U", row.m), r.q_upper, cells.at("q_upper"));
      check.against_printed(label_m(c + " Q_I", row.m), r.q_indep, cells.at("q_indep"));
      check.against_printed(label_m(c + " Q_L", row.m), r.q_lower, cells.at("q_lower"));
      check.against_printed(label_m(c + " Q_S", row.m), r.q_s, cells.at("q_s"));
    }
  }
}

}  // namespace

TableReport reproduce_table(int table_id, const TableOptions& options) {
  const auto& experiments = published::table(table_id);
  const std::filesystem::path dir = options.config_dir.empty() ? default_config_dir() : options.config_dir;

  TableReport report;
  report.table_id = table_id;
  Checker check(report.checks);
  report.text = format("Table %d\n", table_id);

  for (const auto& exp : experiments) {
    const Config cfg = load_config(dir / (exp.config + ".json"));
    SweepSpec spec;
    if (options.m_values) {
      spec.m_values = *options.m_values;
    } else {
      for (const auto& r : exp.rows) spec.m_values.push_back(r.m);
    }
    spec.run.n_paths = options.n_paths.value_or(exp.paths);
    spec.run.seed = options.seed;
    spec.run.workers = options.workers;
    spec.label = exp.config;

    const auto rows = run_sweep(cfg, spec, options.on_row);
    report.text += format("\n%s (%s), N = %llu%s\n", exp.title.c_str(), exp.config.c_str(),
                          static_cast<unsigned long long>(spec.run.n_paths),
                          exp.exact ? format(", exact %.4g", *exp.exact).c_str() : ", no exact value");
    for (const auto& row : rows) append_comparison(report.text, exp, row);

    switch (table_id) {
      case 1: table1_checks(exp, rows, check); break;
      case 2: table2_checks(exp, rows, check); break;
      case 3: table3_checks(exp, rows, check); break;
      case 4: table4_checks(exp, rows, check); break;
    }
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }

  report.text += "\nChecks\n";
  for (const auto& c : report.checks)
    report.text += format("  [%s] %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
  return report;
}

}  // namespace bbmc
