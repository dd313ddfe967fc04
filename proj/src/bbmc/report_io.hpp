#pragma once

// CSV and JSON serialisation of pricing reports. Numbers are written with
// 17 significant digits so parsing an emitted file reproduces the values
// exactly.
//
// CSV is long format, one row per (label, M, estimator):
//
//   label,m,estimator,mean,std_error,n_paths
//
// Estimators: q_s, q_upper, q_indep, q_lower, q_exact (when present), gap,
// vanilla, q0, q1, q2 (std_error holds the half-width), ci_low, ci_high
// (std_error 0).

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "bbmc/estimators.hpp"

namespace bbmc {

struct SweepRow {
  std::string label;
  std::size_t m = 0;
  PricingReport report;
};

nlohmann::json report_to_json(const PricingReport& report);
PricingReport report_from_json(const nlohmann::json& j);

nlohmann::json rows_to_json(const std::vector<SweepRow>& rows);
std::vector<SweepRow> rows_from_json(const nlohmann::json& j);

inline constexpr const char* kCsvHeader = "label,m,estimator,mean,std_error,n_paths";

void write_csv_header(std::ostream& out);
void write_csv_rows(std::ostream& out, const SweepRow& row);
std::string rows_to_csv(const std::vector<SweepRow>& rows);

/// Parses CSV emitted by write_csv_rows. Throws ConfigError on malformed
/// input. Mode, seed and alpha are not carried by the CSV format.
std::vector<SweepRow> rows_from_csv(const std::string& text);

std::string format_double(double v);

const char* mode_name(PricingMode mode);

}  // namespace bbmc
