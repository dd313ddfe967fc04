#pragma once

// Published Monte Carlo results and exact prices that the harness compares
// against. Values are transcribed as printed, including their rounding.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bbmc::published {

struct Cell {
  double value = 0.0;
  double std_error = 0.0;
};

struct Row {
  std::size_t m = 0;
  /// Keys: q (exact-weight estimator), q_s, q_upper, q_indep, q_lower, q0,
  /// q1, q2. For q0/q1/q2 std_error is the printed half-width.
  std::map<std::string, Cell> cells;
};

struct Experiment {
  std::string config;  // file stem under the config directory
  std::string title;
  std::optional<double> exact;
  std::uint64_t paths = 0;
  std::vector<Row> rows;

  const Row* row(std::size_t m) const;
};

/// Experiments of table 1..4. Throws std::invalid_argument otherwise.
const std::vector<Experiment>& table(int id);

}  // namespace bbmc::published
