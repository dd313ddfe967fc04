#pragma once

// Bridge-weighted Monte Carlo estimators for knock-out, knock-in and
// rebate barrier options.
//
// Every variant is computed from the same simulated paths. Per path the
// discounted payoff is multiplied by the discrete survival indicator and by
// the product over intervals of a no-hit weight:
//
//   standard  weight 1                      (discretely monitored price)
//   lower     Frechet lower bound           (max(1 - sum xi, 0))
//   indep     independence product          (prod (1 - xi))
//   upper     Frechet upper bound           (min (1 - xi))
//   exact     single-event marginal 1 - xi  (only when every interval has
//                                            at most one barrier)
//
// so lower <= indep <= upper <= standard holds path by path for knock-outs.

#include <cstdint>
#include <optional>

#include "bbmc/model.hpp"

namespace bbmc {

struct EstimatorResult {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(N)
  std::uint64_t n_paths = 0;
};

/// Midpoint of two estimators; half_width is half the one-sigma interval
/// spanned by them.
struct PointEstimate {
  double value = 0.0;
  double half_width = 0.0;
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

enum class PricingMode { knock_out, knock_in, rebate };

struct PricingReport {
  PricingMode mode = PricingMode::knock_out;
  std::size_t steps = 0;
  std::uint64_t seed = 0;
  double alpha = 0.05;

  EstimatorResult q_s;
  EstimatorResult q_upper;
  EstimatorResult q_indep;
  EstimatorResult q_lower;
  std::optional<EstimatorResult> q_exact;
  /// q_upper - q_lower evaluated path by path.
  EstimatorResult gap;
  /// Discounted payoff with no barrier at all, from the same paths.
  EstimatorResult vanilla;

  PointEstimate q0, q1, q2;
  Interval ci;

  /// Paths whose contributions broke the mode's ordering (knock-out:
  /// lower <= indep <= upper <= standard; knock-in: standard <= lower <=
  /// indep <= upper; rebate: lower <= indep <= upper). Always 0 unless the
  /// engine is wrong.
  std::uint64_t ordering_violations = 0;
};

struct RunOptions {
  std::uint64_t n_paths = 100000;
  std::uint64_t seed = 1;
  double alpha = 0.05;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
};

/// Per-path discounted contributions of every variant.
struct PathContribution {
  double vanilla = 0.0;
  double standard = 0.0;
  double lower = 0.0;
  double indep = 0.0;
  double upper = 0.0;
  double exact = 0.0;  // meaningful only when the problem has single events
};

/// Contributions of path `path_index` in the given mode.
PathContribution evaluate_path(const PricingProblem& problem, PricingMode mode, std::uint64_t seed,
                               std::uint64_t path_index);

PricingReport price(const PricingProblem& problem, const RunOptions& options);
PricingReport knock_in_price(const PricingProblem& problem, const RunOptions& options);
PricingReport rebate_price(const PricingProblem& problem, const RunOptions& options);

/// Dispatches on the option's knock type and rebate.
PricingReport run(const PricingProblem& problem, const RunOptions& options);
PricingMode mode_for(const OptionSpec& spec);

struct PointEstimators {
  PointEstimate q0, q1, q2;
};

/// q0 = (L + U)/2, q1 = (L + I)/2, q2 = (I + U)/2, each with half the
/// one-standard-error interval as its error.
PointEstimators point_estimators(const EstimatorResult& lower, const EstimatorResult& indep,
                                 const EstimatorResult& upper);

/// [L - z s_L, U + z s_U] with z the 1 - alpha/2 normal quantile.
Interval confidence_interval(const EstimatorResult& lower, const EstimatorResult& upper, double alpha);

/// Fits Q_M = Q_c + lambda / sqrt(M) through (m_low, q_lowfreq) and
/// evaluates it at m_target.
double discrete_barrier_interpolate(double q_continuous, double q_lowfreq, std::size_t m_low,
                                    std::size_t m_target);

}  // namespace bbmc
