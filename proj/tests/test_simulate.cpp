#include <doctest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "bbmc/analytic.hpp"
#include "bbmc/rng.hpp"
#include "bbmc/simulate.hpp"

using namespace bbmc;

namespace {

PricingProblem table1_problem(std::size_t steps, double sigma = 0.3) {
  MarketModel m;
  m.assets = 1;
  m.spot = {100};
  m.rate = 0.1;
  m.grid = TimeGrid::uniform(0.5, steps);
  Regime r = Regime::flat(1, 0.1, sigma);
  r.lower[0] = 90.0;
  m.regimes.assign(steps, r);
  OptionSpec spec;
  spec.payoff.strike = 100;
  return PricingProblem(m, spec);
}

}  // namespace

TEST_SUITE("simulate") {
  TEST_CASE("deterministic steps") {
    const double prev[] = {100.0};
    const double zero[] = {0.0};
    Regime flat = Regime::flat(1, 0.1, 0.0);
    CHECK(step(prev, flat, 1.0, zero)[0] == doctest::Approx(110.517091807564762).epsilon(1e-14));
    flat.sigma[0] = 0.3;
    CHECK(step(prev, flat, 0.5, zero)[0] == doctest::Approx(102.788161510725265).epsilon(1e-14));
  }

  TEST_CASE("one step is a martingale under the risk-free drift") {
    const Regime reg = Regime::flat(1, 0.1, 0.3);
    const VariateStream s(11);
    const double prev[] = {1.0};
    const int n = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double z[] = {s.normal(static_cast<std::uint64_t>(i), 0, 0)};
      const double r = step(prev, reg, 0.5, z)[0];
      sum += r;
      sum2 += r * r;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::abs(mean - std::exp(0.05)) < 4.0 * se);
  }

  TEST_CASE("correlated normals have the requested correlation") {
    Matrix c = Matrix::identity(3);
    c(0, 1) = c(1, 0) = 0.5;
    c(0, 2) = c(2, 0) = -0.3;
    c(1, 2) = c(2, 1) = 0.2;
    const Matrix l = factor_correlation(c);
    const VariateStream s(5);
    const int n = 200000;
    double sxy[3][3] = {};
    double eps[3], z[3];
    for (int p = 0; p < n; ++p) {
      s.normals(static_cast<std::uint64_t>(p), 0, eps, 3);
      correlate(l, eps, z);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) sxy[i][j] += z[i] * z[j];
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        INFO(i << "," << j);
        // Standard error of a sample correlation is at most 1/sqrt(n).
        CHECK(std::abs(sxy[i][j] / n - c(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) <
              5.0 / std::sqrt(n));
      }
  }

  TEST_CASE("paths start at spot and stay positive") {
    const PricingProblem prob = table1_problem(16);
    for (std::uint64_t p = 0; p < 100; ++p) {
      const PathState s = simulate_path(prob, 3, p);
      REQUIRE(s.values.size() == 17);
      CHECK(s.values[0] == 100.0);
      bool inside = true;
      for (std::size_t m = 0; m <= 16; ++m) {
        CHECK(s.at(m, 0) > 0.0);
        if (s.at(m, 0) <= 90.0) inside = false;
      }
      CHECK(s.alive_discrete == inside);
    }
  }

  TEST_CASE("vanishing volatility gives the deterministic path") {
    const PricingProblem prob = table1_problem(1, 1e-12);
    const PathState s = simulate_path(prob, 9, 12345);
    CHECK(s.at(1, 0) == doctest::Approx(100.0 * std::exp(0.05)).epsilon(1e-10));
    CHECK(s.alive_discrete);
  }

  TEST_CASE("paths do not depend on which thread computes them") {
    const PricingProblem prob = table1_problem(8);
    const std::size_t n = 4000;
    std::vector<PathState> serial(n), parallel(n);
    for (std::size_t p = 0; p < n; ++p) serial[p] = simulate_path(prob, 77, p);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < 8; ++w)
        pool.emplace_back([&, w] {
          for (std::size_t p = w; p < n; p += 8) parallel[p] = simulate_path(prob, 77, p);
        });
    }
    for (std::size_t p = 0; p < n; ++p) {
      CHECK(serial[p].values == parallel[p].values);
      CHECK(serial[p].alive_discrete == parallel[p].alive_discrete);
    }
  }

  TEST_CASE("terminal survival fraction at M = 1") {
    const PricingProblem prob = table1_problem(1);
    const std::size_t n = 100000;
    std::size_t alive = 0;
    for (std::size_t p = 0; p < n; ++p) alive += simulate_path(prob, 1, p).alive_discrete;
    const double expected =
        analytic::norm_cdf((std::log(100.0 / 90.0) + (0.1 - 0.045) * 0.5) / (0.3 * std::sqrt(0.5)));
    const double frac = static_cast<double>(alive) / n;
    CHECK(std::abs(frac - expected) < 4.0 * std::sqrt(expected * (1 - expected) / n));
  }
}
