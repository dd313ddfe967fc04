#pragma once

// Experiment driver: M-sweeps, convergence-rate fits and reproduction of the
// published comparison tables.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbmc/config.hpp"
#include "bbmc/estimators.hpp"
#include "bbmc/report_io.hpp"

namespace bbmc {

struct SweepSpec {
  std::vector<std::size_t> m_values;
  RunOptions run;
  std::string label;
};

/// One pricing run per M on a uniform grid, same seed for every M. Calls
/// `on_row` after each row when given. Requires a constant-regime model.
std::vector<SweepRow> run_sweep(const Config& config, const SweepSpec& spec,
                                const std::function<void(const SweepRow&)>& on_row = {});

// -- convergence fits -------------------------------------------------------

/// Raised when too few sweep rows clear the noise floor.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FitKind { exponential, power };

struct GapPoint {
  std::size_t m = 0;
  double gap = 0.0;
  double std_error = 0.0;
};

struct ConvergenceFit {
  FitKind kind = FitKind::exponential;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::size_t> points_used;
};

/// Q_U - Q_L per row with its path-wise standard error. Rows parsed from CSV
/// without a gap entry fall back to the combined error of the two bounds.
std::vector<GapPoint> gap_points(const std::vector<SweepRow>& rows);

/// Least-squares fit of ln(gap) against M (exponential) or ln M (power),
/// using rows with M >= min_m and gap above 4 standard errors.
ConvergenceFit fit_convergence(const std::vector<GapPoint>& points, FitKind kind, std::size_t min_m = 1);

// -- table reproduction -----------------------------------------------------

struct TableOptions {
  std::optional<std::uint64_t> n_paths;  // default: the published count per table
  std::uint64_t seed = 20260101;
  std::optional<std::vector<std::size_t>> m_values;
  unsigned workers = 0;
  std::filesystem::path config_dir;
  /// Called with each computed row as it completes.
  std::function<void(const SweepRow&)> on_row;
};

struct GoldenCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct TableReport {
  int table_id = 0;
  std::vector<SweepRow> rows;
  std::vector<GoldenCheck> checks;
  std::string text;  // formatted comparison against the published values

  bool passed() const;
};

/// Runs the shipped configurations of table 1-4 and compares against the
/// published values. Throws std::invalid_argument for an unknown id.
TableReport reproduce_table(int table_id, const TableOptions& options);

/// Directory holding the shipped configurations.
std::filesystem::path default_config_dir();

}  // namespace bbmc
