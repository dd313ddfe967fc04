#include "bbmc/report_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>

#include "bbmc/config.hpp"

namespace bbmc {
namespace {

using nlohmann::json;

json estimate_json(const EstimatorResult& r) {
  return {{"mean", r.mean}, {"std_error", r.std_error}, {"n_paths", r.n_paths}};
}

EstimatorResult estimate_from(const json& j) {
  return {j.at("mean").get<double>(), j.at("std_error").get<double>(), j.at("n_paths").get<std::uint64_t>()};
}

json point_json(const PointEstimate& p) { return {{"value", p.value}, {"half_width", p.half_width}}; }

PointEstimate point_from(const json& j) {
  return {j.at("value").get<double>(), j.at("half_width").get<double>()};
}

PricingMode mode_from(const std::string& s) {
  if (s == "knock_out") return PricingMode::knock_out;
  if (s == "knock_in") return PricingMode::knock_in;
  if (s == "rebate") return PricingMode::rebate;
  throw ConfigError("unknown pricing mode '" + s + "'");
}

double parse_number(const std::string& field) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size()) throw ConfigError("bad number '" + field + "' in CSV");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* mode_name(PricingMode mode) {
  switch (mode) {
    case PricingMode::knock_out: return "knock_out";
    case PricingMode::knock_in: return "knock_in";
    case PricingMode::rebate: return "rebate";
  }
  return "knock_out";
}

json report_to_json(const PricingReport& r) {
  json j;
  j["mode"] = mode_name(r.mode);
  j["steps"] = r.steps;
  j["seed"] = r.seed;
  j["alpha"] = r.alpha;
  j["q_s"] = estimate_json(r.q_s);
  j["q_upper"] = estimate_json(r.q_upper);
  j["q_indep"] = estimate_json(r.q_indep);
  j["q_lower"] = estimate_json(r.q_lower);
  j["q_exact"] = r.q_exact ? estimate_json(*r.q_exact) : json(nullptr);
  j["gap"] = estimate_json(r.gap);
  j["vanilla"] = estimate_json(r.vanilla);
  j["q0"] = point_json(r.q0);
  j["q1"] = point_json(r.q1);
  j["q2"] = point_json(r.q2);
  j["ci"] = {{"low", r.ci.low}, {"high", r.ci.high}};
  j["ordering_violations"] = r.ordering_violations;
  return j;
}

PricingReport report_from_json(const json& j) {
  try {
    PricingReport r;
    r.mode = mode_from(j.at("mode").get<std::string>());
    r.steps = j.at("steps").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.alpha = j.at("alpha").get<double>();
    r.q_s = estimate_from(j.at("q_s"));
    r.q_upper = estimate_from(j.at("q_upper"));
    r.q_indep = estimate_from(j.at("q_indep"));
    r.q_lower = estimate_from(j.at("q_lower"));
    if (!j.at("q_exact").is_null()) r.q_exact = estimate_from(j.at("q_exact"));
    r.gap = estimate_from(j.at("gap"));
    r.vanilla = estimate_from(j.at("vanilla"));
    r.q0 = point_from(j.at("q0"));
    r.q1 = point_from(j.at("q1"));
    r.q2 = point_from(j.at("q2"));
    r.ci = {j.at("ci").at("low").get<double>(), j.at("ci").at("high").get<double>()};
    r.ordering_violations = j.value("ordering_violations", std::uint64_t{0});
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report JSON: ") + e.what());
  }
}

json rows_to_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json j = report_to_json(row.report);
    j["label"] = row.label;
    j["m"] = row.m;
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<SweepRow> rows_from_json(const json& j) {
  std::vector<SweepRow> rows;
  for (const auto& item : j) {
    SweepRow row;
    row.label = item.value("label", "");
    row.m = item.value("m", std::size_t{0});
    row.report = report_from_json(item);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_rows(std::ostream& out, const SweepRow& row) {
  const PricingReport& r = row.report;
  auto emit = [&](const char* name, double mean, double se, std::uint64_t n) {
    out << row.label << ',' << row.m << ',' << name << ',' << format_double(mean) << ',' << format_double(se)
        << ',' << n << '\n';
  };
  auto est = [&](const char* name, const EstimatorResult& e) { emit(name, e.mean, e.std_error, e.n_paths); };
  const std::uint64_t n = r.q_s.n_paths;
  est("q_s", r.q_s);
  est("q_upper", r.q_upper);
  est("q_indep", r.q_indep);
  est("q_lower", r.q_lower);
  if (r.q_exact) est("q_exact", *r.q_exact);
  est("gap", r.gap);
  est("vanilla", r.vanilla);
  emit("q0", r.q0.value, r.q0.half_width, n);
  emit("q1", r.q1.value, r.q1.half_width, n);
  emit("q2", r.q2.value, r.q2.half_width, n);
  emit("ci_low", r.ci.low, 0.0, n);
  emit("ci_high", r.ci.high, 0.0, n);
}

std::string rows_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  write_csv_header(os);
  for (const auto& row : rows) write_csv_rows(os, row);
  return os.str();
}

std::vector<SweepRow> rows_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ConfigError("CSV header mismatch");

  std::vector<SweepRow> rows;
  std::map<std::pair<std::string, std::size_t>, std::size_t> index;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 6) throw ConfigError("CSV line " + std::to_string(line_no) + ": expected 6 fields");
    const auto m = static_cast<std::size_t>(parse_number(f[1]));
    const auto key = std::make_pair(f[0], m);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, rows.size()).first;
      rows.push_back({f[0], m, {}});
      rows.back().report.steps = m;
    }
    PricingReport& r = rows[it->second].report;
    const double mean = parse_number(f[3]);
    const double se = parse_number(f[4]);
    const auto n = static_cast<std::uint64_t>(parse_number(f[5]));
    const EstimatorResult e{mean, se, n};
    const std::string& name = f[2];
    if (name == "q_s") r.q_s = e;
    else if (name == "q_upper") r.q_upper = e;
    else if (name == "q_indep") r.q_indep = e;
    else if (name == "q_lower") r.q_lower = e;
    else if (name == "q_exact") r.q_exact = e;
    else if (name == "gap") r.gap = e;
    else if (name == "vanilla") r.vanilla = e;
    else if (name == "q0") r.q0 = {mean, se};
    else if (name == "q1") r.q1 = {mean, se};
    else if (name == "q2") r.q2 = {mean, se};
    else if (name == "ci_low") r.ci.low = mean;
    else if (name == "ci_high") r.ci.high = mean;
    else throw ConfigError("CSV line " + std::to_string(line_no) + ": unknown estimator '" + name + "'");
  }
  return rows;
}

}  // namespace bbmc
