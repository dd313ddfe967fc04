#pragma once

// Conditional no-hit probabilities of Brownian-bridge extrema over one
// sampling interval: exact marginals, Frechet bounds, the independence
// product, extremum sampling and a brute-force fine-grid oracle.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bbmc/model.hpp"

namespace bbmc {

enum class BarrierSide { lower, upper };
enum class Extremum { max, min };

/// Probability that a geometric Brownian bridge from s0 to s1 over dt with
/// volatility sigma touches `barrier`. Returns 1 when an endpoint already
/// touches or crosses it.
double xi(double s0, double s1, double barrier, double sigma, double dt, BarrierSide side);

/// Same as xi, in log coordinates: x0 = ln s0, x1 = ln s1, log_barrier =
/// ln X, variance = sigma^2 dt.
inline double xi_log(double x0, double x1, double log_barrier, double variance,
                     BarrierSide side);

struct IntervalContext {
  std::span<const double> s0;
  std::span<const double> s1;
  const Regime* regime = nullptr;
  double dt = 0.0;
};

/// No-hit probabilities for the barriers of asset k alone. `lower`/`upper`
/// are absent when the asset has no such barrier.
struct MarginalNoHit {
  std::optional<double> lower;
  std::optional<double> upper;
};

/// Throws std::invalid_argument when asset k has no barrier in the regime.
MarginalNoHit marginal_no_hit(const IntervalContext& ctx, std::size_t k);

struct FrechetBounds {
  double lower = 1.0;
  double upper = 1.0;
};

/// Bounds on the joint no-hit probability given marginal hit probabilities.
FrechetBounds frechet_bounds(std::span<const double> hit_probs);

/// Joint no-hit probability if all hit events were independent.
double independent_no_hit(std::span<const double> hit_probs);

struct BridgeWeights {
  double p_lower = 1.0;
  double p_indep = 1.0;
  double p_upper = 1.0;
  std::optional<double> p_exact;  // present iff at most one barrier event
};

/// Collects every barrier event of the interval (two per doubly-barriered
/// asset) and assembles the weights.
BridgeWeights interval_weights(const IntervalContext& ctx);

/// Weights from precomputed hit probabilities; p_exact is set iff
/// hit_probs.size() <= 1.
BridgeWeights weights_from_hits(std::span<const double> hit_probs);

/// Samples the bridge maximum (or minimum) by inverting xi. u is clamped to
/// [1e-16, 1 - 1e-16].
double sample_extremum(double s0, double s1, double sigma, double dt, double u, Extremum which);

inline constexpr double kUniformClamp = 1e-16;

struct OracleEstimate {
  double probability = 0.0;
  double std_error = 0.0;
};

/// Brute-force joint no-hit probability of the conditioned multi-asset bridge
/// on a fine grid. The correlated log-price bridge is sampled forward point
/// by point, monitored discretely at `substeps` points with the Broadie-Glasserman-Kou barrier shift
/// (0.5826 sigma sqrt(h)). Test support only.
OracleEstimate oracle_no_hit(const IntervalContext& ctx, std::size_t substeps, std::size_t trials,
                             std::uint64_t seed = 1);

// -- inline ---------------------------------------------------------------

inline double xi_log(double x0, double x1, double log_barrier, double variance,
                     BarrierSide side) {
  if (side == BarrierSide::lower) {
    if (x0 <= log_barrier || x1 <= log_barrier) return 1.0;
  } else {
    if (x0 >= log_barrier || x1 >= log_barrier) return 1.0;
  }
  // Both factors share a sign, so the exponent is negative; exp underflows
  // to 0 in the far-barrier limit.
  return std::exp(-2.0 * (log_barrier - x0) * (log_barrier - x1) / variance);
}

}  // namespace bbmc
