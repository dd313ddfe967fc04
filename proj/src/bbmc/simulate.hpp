#pragma once

// Correlated GBM paths at the sampling dates and the discrete barrier-hit
// indicator.

#include <cstdint>
#include <span>
#include <vector>

#include "bbmc/bridge.hpp"
#include "bbmc/model.hpp"
#include "bbmc/rng.hpp"

namespace bbmc {

/// One trajectory at the sampling dates.
struct PathState {
  std::size_t assets = 0;
  std::vector<double> values;  // (M+1) x d, row per date
  bool alive_discrete = true;
  std::uint64_t path_index = 0;

  double at(std::size_t m, std::size_t i) const { return values[m * assets + i]; }
  std::span<const double> row(std::size_t m) const {
    return std::span<const double>(values).subspan(m * assets, assets);
  }
};

/// One exact GBM step: prev * exp((mu - sigma^2/2) dt + sigma sqrt(dt) z),
/// where z are already-correlated standard normals.
std::vector<double> step(std::span<const double> prev, const Regime& regime, double dt,
                         std::span<const double> z);

/// Correlates independent normals with a lower-triangular factor: out = L * eps.
void correlate(const Matrix& factor, std::span<const double> eps, std::span<double> out);

/// A barrier event in log coordinates.
struct LogBarrier {
  std::size_t asset;
  BarrierSide side;
  double log_level;
};

/// Precomputed per-interval coefficients for log-space simulation. All
/// engine code advances paths through this class so every consumer sees
/// identical trajectories for a given (seed, path).
class PathGenerator {
 public:
  PathGenerator(const PricingProblem& problem, std::uint64_t seed);

  std::size_t assets() const { return assets_; }
  std::size_t steps() const { return steps_; }
  std::span<const double> log_spot() const { return log_spot_; }

  /// Advances log prices `x` across interval m. `eps` is scratch of size d.
  void advance(std::uint64_t path, std::size_t m, std::span<double> x, std::span<double> eps) const;

  /// Barrier events in force on interval m.
  std::span<const LogBarrier> events(std::size_t m) const { return events_[m]; }
  /// sigma_k^2 dt_m for the bridge hit probabilities.
  double variance(std::size_t m, std::size_t k) const { return variance_[m * assets_ + k]; }

  /// True iff log prices `x` lie strictly inside every barrier of interval m.
  bool inside(std::size_t m, std::span<const double> x) const;

 private:
  const PricingProblem* problem_;
  VariateStream stream_;
  std::size_t assets_;
  std::size_t steps_;
  std::vector<double> log_spot_;
  std::vector<double> drift_;     // M x d
  std::vector<double> diffusion_; // M x d
  std::vector<double> variance_;  // M x d
  std::vector<std::vector<LogBarrier>> events_;
};

/// Simulates path `path_index` over the whole grid. A date counts as a hit
/// when the price touches or crosses a barrier of either adjacent interval.
PathState simulate_path(const PricingProblem& problem, std::uint64_t seed, std::uint64_t path_index);

}  // namespace bbmc
