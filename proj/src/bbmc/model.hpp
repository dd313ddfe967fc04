#pragma once

// Market, option and discretisation data model for multi-asset barrier
// options under piecewise-constant geometric Brownian motion.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bbmc {

/// Raised when a model or option fails validation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense square matrix, row-major.
struct Matrix {
  std::size_t n = 0;
  std::vector<double> a;

  Matrix() = default;
  explicit Matrix(std::size_t dim, double fill = 0.0) : n(dim), a(dim * dim, fill) {}

  static Matrix identity(std::size_t dim);

  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// Sampling dates 0 = t_0 < t_1 < ... < t_M = T.
class TimeGrid {
 public:
  TimeGrid() = default;
  explicit TimeGrid(std::vector<double> dates);

  static TimeGrid uniform(double maturity, std::size_t steps);

  std::size_t steps() const { return dates_.empty() ? 0 : dates_.size() - 1; }
  double maturity() const { return dates_.empty() ? 0.0 : dates_.back(); }
  double dt(std::size_t m) const { return dates_[m + 1] - dates_[m]; }
  const std::vector<double>& dates() const { return dates_; }

 private:
  std::vector<double> dates_;
};

/// Parameters in force on one interval [t_m, t_{m+1}).
/// An absent barrier is std::nullopt, never an infinite sentinel.
struct Regime {
  std::vector<double> mu;
  std::vector<double> sigma;
  Matrix corr;
  std::vector<std::optional<double>> lower;
  std::vector<std::optional<double>> upper;

  /// Constant-parameter regime with drift `rate` for every asset and no barriers.
  static Regime flat(std::size_t assets, double rate, double sigma, double rho = 0.0);

  std::size_t barrier_count() const;
};

struct MarketModel {
  std::size_t assets = 0;
  std::vector<double> spot;
  TimeGrid grid;
  std::vector<Regime> regimes;  // one per interval
  double rate = 0.0;

  /// Same parameters on a uniform grid with `steps` intervals. Requires all
  /// regimes to be identical (a constant-parameter model).
  MarketModel regridded(std::size_t steps) const;
  bool constant_regime() const;
};

enum class PayoffKind { call, digital, custom };
enum class KnockType { out, in };

/// Undiscounted payoff at maturity; discounting by exp(-rT) is applied by the
/// estimators.
struct Payoff {
  PayoffKind kind = PayoffKind::call;
  std::size_t asset = 0;
  double strike = 0.0;
  /// Used when kind == custom. Receives S(T) for all assets.
  std::function<double(std::span<const double>)> custom;

  double operator()(std::span<const double> terminal) const;
};

struct OptionSpec {
  Payoff payoff;
  KnockType knock = KnockType::out;
  double rebate = 0.0;  // paid at maturity on knock-out
};

struct ValidationReport {
  std::vector<std::string> problems;
  /// Lower-triangular correlation factor per regime; empty when validation
  /// failed before factorisation.
  std::vector<Matrix> factors;

  bool ok() const { return problems.empty(); }
  std::string summary() const;
};

/// Checks every invariant of the model and option and caches one correlation
/// factor per regime. Never throws for invalid input; problems are listed.
ValidationReport validate(const MarketModel& model, const OptionSpec& spec);

/// Lower-triangular L with L * L^T == corr. Eigenvalues in [-1e-8, 0) are
/// clipped to zero first; anything more negative throws ValidationError.
/// Singular matrices (e.g. rho = +/-1) yield a rank-deficient factor.
Matrix factor_correlation(const Matrix& corr);

inline constexpr double kPsdTolerance = 1e-8;

/// A validated model/option pair. Immutable; safe to share across threads.
class PricingProblem {
 public:
  PricingProblem(MarketModel model, OptionSpec spec);

  const MarketModel& model() const { return model_; }
  const OptionSpec& spec() const { return spec_; }
  const Matrix& factor(std::size_t regime) const { return factors_[regime]; }
  double discount() const { return discount_; }

  /// True when every interval carries at most one barrier event, so the
  /// exact single-barrier weight applies everywhere.
  bool single_event_per_interval() const { return single_event_; }

 private:
  MarketModel model_;
  OptionSpec spec_;
  std::vector<Matrix> factors_;
  double discount_ = 1.0;
  bool single_event_ = true;
};

}  // namespace bbmc
