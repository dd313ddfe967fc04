#include "bbmc/bridge.hpp"

#include <algorithm>
#include <stdexcept>

#include "bbmc/rng.hpp"

namespace bbmc {

double xi(double s0, double s1, double barrier, double sigma, double dt, BarrierSide side) {
  return xi_log(std::log(s0), std::log(s1), std::log(barrier), sigma * sigma * dt, side);
}

MarginalNoHit marginal_no_hit(const IntervalContext& ctx, std::size_t k) {
  const Regime& reg = *ctx.regime;
  if (!reg.lower[k] && !reg.upper[k])
    throw std::invalid_argument("asset " + std::to_string(k) + " has no active barrier");
  const double sigma = reg.sigma[k];
  MarginalNoHit out;
  if (reg.lower[k])
    out.lower = 1.0 - xi(ctx.s0[k], ctx.s1[k], *reg.lower[k], sigma, ctx.dt, BarrierSide::lower);
  if (reg.upper[k])
    out.upper = 1.0 - xi(ctx.s0[k], ctx.s1[k], *reg.upper[k], sigma, ctx.dt, BarrierSide::upper);
  return out;
}

FrechetBounds frechet_bounds(std::span<const double> hit_probs) {
  FrechetBounds b;
  double total = 0.0;
  for (double x : hit_probs) {
    total += x;
    b.upper = std::min(b.upper, 1.0 - x);
  }
  b.lower = std::max(1.0 - total, 0.0);
  return b;
}

double independent_no_hit(std::span<const double> hit_probs) {
  double p = 1.0;
  for (double x : hit_probs) p *= 1.0 - x;
  return p;
}

BridgeWeights weights_from_hits(std::span<const double> hit_probs) {
  BridgeWeights w;
  const FrechetBounds b = frechet_bounds(hit_probs);
  w.p_lower = b.lower;
  w.p_upper = b.upper;
  // Rounding can push the product a few ulps outside the bounds.
  w.p_indep = std::clamp(independent_no_hit(hit_probs), w.p_lower, w.p_upper);
  if (hit_probs.size() <= 1) w.p_exact = w.p_upper;
  return w;
}

BridgeWeights interval_weights(const IntervalContext& ctx) {
  const Regime& reg = *ctx.regime;
  std::vector<double> hits;
  for (std::size_t k = 0; k < reg.sigma.size(); ++k) {
    if (reg.lower[k])
      hits.push_back(xi(ctx.s0[k], ctx.s1[k], *reg.lower[k], reg.sigma[k], ctx.dt, BarrierSide::lower));
    if (reg.upper[k])
      hits.push_back(xi(ctx.s0[k], ctx.s1[k], *reg.upper[k], reg.sigma[k], ctx.dt, BarrierSide::upper));
  }
  return weights_from_hits(hits);
}

double sample_extremum(double s0, double s1, double sigma, double dt, double u, Extremum which) {
  u = std::clamp(u, kUniformClamp, 1.0 - kUniformClamp);
  const double a = std::log(s0);
  const double b = std::log(s1);
  const double half_diff = 0.5 * (a - b);
  const double root = std::sqrt(half_diff * half_diff - 0.5 * sigma * sigma * dt * std::log(u));
  const double mid = 0.5 * (a + b);
  return std::exp(which == Extremum::max ? mid + root : mid - root);
}

OracleEstimate oracle_no_hit(const IntervalContext& ctx, std::size_t substeps, std::size_t trials,
                             std::uint64_t seed) {
  const Regime& reg = *ctx.regime;
  const std::size_t d = reg.sigma.size();
  const Matrix factor = factor_correlation(reg.corr);
  const double h = ctx.dt / static_cast<double>(substeps);
  const double sqrt_h = std::sqrt(h);
  constexpr double kShift = 0.5826;  // -zeta(1/2)/sqrt(2*pi)

  std::vector<double> a(d), b(d), lo(d), hi(d);
  std::vector<bool> has_lo(d), has_hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    a[i] = std::log(ctx.s0[i]);
    b[i] = std::log(ctx.s1[i]);
    const double shift = kShift * reg.sigma[i] * sqrt_h;
    has_lo[i] = reg.lower[i].has_value();
    has_hi[i] = reg.upper[i].has_value();
    if (has_lo[i]) lo[i] = std::log(*reg.lower[i]) + shift;
    if (has_hi[i]) hi[i] = std::log(*reg.upper[i]) - shift;
  }

  // Endpoints on or beyond a (true, unshifted) barrier are certain hits.
  for (std::size_t i = 0; i < d; ++i) {
    if (has_lo[i] && std::min(ctx.s0[i], ctx.s1[i]) <= *reg.lower[i]) return {0.0, 0.0};
    if (has_hi[i] && std::max(ctx.s0[i], ctx.s1[i]) >= *reg.upper[i]) return {0.0, 0.0};
  }

  // The pinned bridge is sampled forward: with r fine intervals left, the
  // next point has mean x + (b - x)/r and covariance h (r-1)/r Sigma.
  // Sampling stops at the first hit.
  const VariateStream stream(seed);
  std::vector<double> eps(d), x(d);
  std::vector<double> mean_coef(substeps), vol_coef(substeps);
  for (std::size_t k = 0; k < substeps; ++k) {
    const double r = static_cast<double>(substeps - k);
    mean_coef[k] = 1.0 / r;
    vol_coef[k] = std::sqrt(h * (r - 1.0) / r);
  }
  std::size_t survived = 0;

  for (std::size_t t = 0; t < trials; ++t) {
    std::copy(a.begin(), a.end(), x.begin());
    bool alive = true;
    for (std::size_t k = 0; k + 1 < substeps && alive; ++k) {
      stream.normals(t, static_cast<std::uint32_t>(k), eps.data(), d);
      for (std::size_t i = 0; i < d; ++i) {
        double z = 0.0;
        for (std::size_t j = 0; j <= i; ++j) z += factor(i, j) * eps[j];
        x[i] += (b[i] - x[i]) * mean_coef[k] + reg.sigma[i] * vol_coef[k] * z;
      }
      for (std::size_t i = 0; i < d; ++i)
        if ((has_lo[i] && x[i] <= lo[i]) || (has_hi[i] && x[i] >= hi[i])) {
          alive = false;
          break;
        }
    }
    survived += alive;
  }

  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(survived) / n;
  return {p, std::sqrt(std::max(p * (1.0 - p), 0.0) / n)};
}

}  // namespace bbmc
