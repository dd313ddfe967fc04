#pragma once

// Closed-form Black-Scholes reference prices for continuously monitored
// barrier options, used as golden values by the tests and the harness.

#include <optional>

namespace bbmc::analytic {

struct BsParams {
  double spot = 100.0;
  double strike = 100.0;
  std::optional<double> barrier;  // lower barrier, when present
  double sigma = 0.2;
  double rate = 0.0;
  double maturity = 1.0;
};

/// Standard normal CDF via std::erfc (absolute error well below 1e-15).
double norm_cdf(double x);

double vanilla_call(const BsParams& p);

/// Down-and-out call, continuously monitored, no rebate. Uses the image
/// form C(S) - (h/S)^(2r/sigma^2 - 1) C(h^2/S) when h <= K, and the
/// Reiner-Rubinstein expression when h > K. Throws std::domain_error when
/// barrier >= spot or the barrier is missing.
double down_and_out_call(const BsParams& p);

/// exp(-rT) * P(min_{[0,T]} S > h): a unit cash amount paid at maturity if
/// the lower barrier is never touched.
double down_and_out_digital(const BsParams& p);

/// Undiscounted survival probability P(min_{[0,T]} S > h).
double survival_probability(const BsParams& p);

/// Exact prices of the symmetric two-asset down-and-out call (S1 = S2 = 100,
/// K = 100, h1 = h2 = 90, sigma = 0.3, r = 0.1, T = 1) at rho in {-1, 0, 1}.
/// rho = 1 and rho = 0 are computed from the closed forms; rho = -1 returns
/// the published double-barrier value 0.0131. Throws std::invalid_argument
/// for any other rho.
double two_asset_reference_price(double rho);

}  // namespace bbmc::analytic
