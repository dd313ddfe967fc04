#include "bbmc/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bbmc::analytic {
namespace {

void require_valid(const BsParams& p) {
  if (!(p.spot > 0.0) || !(p.strike >= 0.0) || !(p.sigma > 0.0) || !(p.maturity > 0.0))
    throw std::domain_error("invalid Black-Scholes parameters");
}

double require_barrier(const BsParams& p) {
  if (!p.barrier) throw std::domain_error("a lower barrier is required");
  if (!(*p.barrier < p.spot)) throw std::domain_error("barrier must lie below spot");
  return *p.barrier;
}

}  // namespace

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double vanilla_call(const BsParams& p) {
  require_valid(p);
  const double df = std::exp(-p.rate * p.maturity);
  if (p.strike == 0.0) return p.spot;
  const double vol = p.sigma * std::sqrt(p.maturity);
  const double d1 = (std::log(p.spot / p.strike) + (p.rate + 0.5 * p.sigma * p.sigma) * p.maturity) / vol;
  return p.spot * norm_cdf(d1) - p.strike * df * norm_cdf(d1 - vol);
}

double down_and_out_call(const BsParams& p) {
  require_valid(p);
  const double h = require_barrier(p);
  if (h <= 0.0) return vanilla_call(p);
  const double s = p.spot, k = p.strike, r = p.rate, sig = p.sigma, t = p.maturity;

  if (h <= k) {
    BsParams image = p;
    image.spot = h * h / s;
    image.barrier.reset();
    const double exponent = 2.0 * r / (sig * sig) - 1.0;
    return vanilla_call(p) - std::pow(h / s, exponent) * vanilla_call(image);
  }

  const double vol = sig * std::sqrt(t);
  const double lambda = (r + 0.5 * sig * sig) / (sig * sig);
  const double df = std::exp(-r * t);
  const double x1 = std::log(s / h) / vol + lambda * vol;
  const double y1 = std::log(h / s) / vol + lambda * vol;
  const double hs = h / s;
  return s * norm_cdf(x1) - k * df * norm_cdf(x1 - vol) - s * std::pow(hs, 2.0 * lambda) * norm_cdf(y1) +
         k * df * std::pow(hs, 2.0 * lambda - 2.0) * norm_cdf(y1 - vol);
}

double survival_probability(const BsParams& p) {
  require_valid(p);
  const double h = require_barrier(p);
  if (h <= 0.0) return 1.0;
  const double nu = p.rate - 0.5 * p.sigma * p.sigma;
  const double dist = std::log(p.spot / h);
  const double vol = p.sigma * std::sqrt(p.maturity);
  return norm_cdf((dist + nu * p.maturity) / vol) -
         std::exp(-2.0 * nu * dist / (p.sigma * p.sigma)) * norm_cdf((-dist + nu * p.maturity) / vol);
}

double down_and_out_digital(const BsParams& p) {
  return std::exp(-p.rate * p.maturity) * survival_probability(p);
}

double two_asset_reference_price(double rho) {
  const BsParams asset{.spot = 100.0, .strike = 100.0, .barrier = 90.0, .sigma = 0.3, .rate = 0.1, .maturity = 1.0};
  if (rho == 1.0) return down_and_out_call(asset);
  if (rho == 0.0) return down_and_out_call(asset) * survival_probability(asset);
  if (rho == -1.0) return 0.0131;
  throw std::invalid_argument("reference price is only available for rho in {-1, 0, 1}");
}

}  // namespace bbmc::analytic
