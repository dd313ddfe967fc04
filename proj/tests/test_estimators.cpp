#include <doctest.h>

#include <cmath>

#include "bbmc/estimators.hpp"

using namespace bbmc;

namespace {

MarketModel two_asset(double rho, std::size_t steps) {
  MarketModel m;
  m.assets = 2;
  m.spot = {100, 100};
  m.rate = 0.1;
  m.grid = TimeGrid::uniform(1.0, steps);
  Regime r = Regime::flat(2, 0.1, 0.3, rho);
  r.lower = {90.0, 90.0};
  m.regimes.assign(steps, r);
  return m;
}

MarketModel one_asset(double barrier, double sigma, std::size_t steps) {
  MarketModel m;
  m.assets = 1;
  m.spot = {100};
  m.rate = 0.1;
  m.grid = TimeGrid::uniform(0.5, steps);
  Regime r = Regime::flat(1, 0.1, sigma);
  r.lower[0] = barrier;
  m.regimes.assign(steps, r);
  return m;
}

OptionSpec call(KnockType knock = KnockType::out, double rebate = 0.0) {
  OptionSpec s;
  s.payoff.strike = 100;
  s.knock = knock;
  s.rebate = rebate;
  return s;
}

RunOptions opts(std::uint64_t n, unsigned workers = 1) {
  RunOptions o;
  o.n_paths = n;
  o.seed = 99;
  o.workers = workers;
  return o;
}

void check_identical(const EstimatorResult& a, const EstimatorResult& b) {
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.n_paths == b.n_paths);
}

void check_identical(const PricingReport& a, const PricingReport& b) {
  check_identical(a.q_s, b.q_s);
  check_identical(a.q_lower, b.q_lower);
  check_identical(a.q_indep, b.q_indep);
  check_identical(a.q_upper, b.q_upper);
  check_identical(a.gap, b.gap);
  check_identical(a.vanilla, b.vanilla);
  REQUIRE(a.q_exact.has_value() == b.q_exact.has_value());
  if (a.q_exact) check_identical(*a.q_exact, *b.q_exact);
  CHECK(a.ci.low == b.ci.low);
  CHECK(a.ci.high == b.ci.high);
  CHECK(a.ordering_violations == b.ordering_violations);
}

}  // namespace

TEST_SUITE("estimators") {
  TEST_CASE("knock-out plus knock-in equals vanilla path by path") {
    const PricingProblem ko(two_asset(0.5, 8), call(KnockType::out));
    const PricingProblem ki(two_asset(0.5, 8), call(KnockType::in));
    for (std::uint64_t p = 0; p < 5000; ++p) {
      const auto a = evaluate_path(ko, PricingMode::knock_out, 3, p);
      const auto b = evaluate_path(ki, PricingMode::knock_in, 3, p);
      CHECK(a.vanilla == b.vanilla);
      CHECK(std::abs(a.standard + b.standard - a.vanilla) <= 1e-12);
      CHECK(std::abs(a.lower + b.upper - a.vanilla) <= 1e-12);
      CHECK(std::abs(a.indep + b.indep - a.vanilla) <= 1e-12);
      CHECK(std::abs(a.upper + b.lower - a.vanilla) <= 1e-12);
    }
  }

  TEST_CASE("ordering holds path by path") {
    for (double rho : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      const PricingProblem p(two_asset(rho, 4), call());
      CHECK(price(p, opts(20000)).ordering_violations == 0);
      CHECK(knock_in_price(p, opts(20000)).ordering_violations == 0);
    }
  }

  TEST_CASE("no barriers: every variant is the vanilla estimator") {
    MarketModel m = one_asset(90, 0.3, 4);
    for (auto& r : m.regimes) r.lower[0].reset();
    const auto rep = price(PricingProblem(m, call()), opts(10000));
    check_identical(rep.q_s, rep.vanilla);
    check_identical(rep.q_lower, rep.vanilla);
    check_identical(rep.q_upper, rep.vanilla);
    REQUIRE(rep.q_exact);
    check_identical(*rep.q_exact, rep.vanilla);
  }

  TEST_CASE("knock-in limits") {
    SUBCASE("barrier that is never reached") {
      const auto rep = knock_in_price(PricingProblem(one_asset(1e-100, 0.3, 4), call(KnockType::in)), opts(10000));
      CHECK(rep.q_s.mean == 0.0);
      CHECK(rep.q_upper.mean == doctest::Approx(0.0).scale(1e-12));
    }
    SUBCASE("barrier crossing is certain") {
      const auto rep = knock_in_price(PricingProblem(one_asset(99.999, 5.0, 1), call(KnockType::in)), opts(20000));
      REQUIRE(rep.q_exact);
      CHECK(std::abs(rep.q_exact->mean - rep.vanilla.mean) < 1e-3 * rep.vanilla.mean);
    }
  }

  TEST_CASE("rebate") {
    const MarketModel m = one_asset(90, 0.3, 4);
    SUBCASE("zero rebate reproduces the plain knock-out bit for bit") {
      const PricingProblem p(m, call());
      check_identical(rebate_price(p, opts(20000)), price(p, opts(20000)));
    }
    SUBCASE("zero payoff and unit rebate prices the hit probability") {
      OptionSpec reb = call(KnockType::out, 1.0);
      reb.payoff.strike = 1e12;
      OptionSpec dig;
      dig.payoff.kind = PayoffKind::digital;
      dig.payoff.strike = 0.0;
      const PricingProblem pr(m, reb), pd(m, dig);
      const double disc = pr.discount();
      for (std::uint64_t i = 0; i < 2000; ++i) {
        const auto r = evaluate_path(pr, PricingMode::rebate, 5, i);
        const auto d = evaluate_path(pd, PricingMode::knock_out, 5, i);
        CHECK(r.lower == doctest::Approx(disc - d.upper).epsilon(1e-12));
        CHECK(r.upper == doctest::Approx(disc - d.lower).epsilon(1e-12));
        CHECK(r.standard == doctest::Approx(disc - d.standard).epsilon(1e-12));
      }
    }
    SUBCASE("rebate equal to the payoff gives the vanilla price") {
      MarketModel flat = m;
      for (auto& r : flat.regimes) r.mu[0] = 0.0, r.sigma[0] = 1e-9;
      OptionSpec s = call(KnockType::out, 0.0);
      s.payoff.strike = 90.0;
      s.rebate = 10.0;
      const auto rep = rebate_price(PricingProblem(flat, s), opts(5000));
      CHECK(rep.q_lower.mean == doctest::Approx(rep.vanilla.mean).epsilon(1e-6));
      CHECK(rep.q_upper.mean == doctest::Approx(rep.vanilla.mean).epsilon(1e-6));
    }
    SUBCASE("dispatch") {
      CHECK(mode_for(call(KnockType::out, 2.0)) == PricingMode::rebate);
      CHECK(mode_for(call(KnockType::in)) == PricingMode::knock_in);
      CHECK(mode_for(call()) == PricingMode::knock_out);
    }
  }

  TEST_CASE("results do not depend on the worker count") {
    const PricingProblem p(two_asset(0.5, 4), call());
    const auto one = price(p, opts(10000, 1));
    check_identical(one, price(p, opts(10000, 3)));
    check_identical(one, price(p, opts(10000, 8)));
  }

  TEST_CASE("point estimators") {
    const EstimatorResult l{1.11, 0.01, 400000}, i{2.41, 0.01, 400000}, u{3.01, 0.01, 400000};
    const auto pe = point_estimators(l, i, u);
    CHECK(pe.q0.value == doctest::Approx(2.06));
    CHECK(pe.q0.half_width == doctest::Approx(0.96));
    CHECK(pe.q1.value == doctest::Approx(1.76));
    CHECK(pe.q1.half_width == doctest::Approx(0.66));
    CHECK(pe.q2.value == doctest::Approx(2.71));
    CHECK(pe.q2.half_width == doctest::Approx(0.31));

    const EstimatorResult same{5.0, 0.02, 100};
    const auto eq = point_estimators(same, same, same);
    CHECK(eq.q0.value == 5.0);
    CHECK(eq.q0.half_width == doctest::Approx(0.02));
  }

  TEST_CASE("confidence interval") {
    const EstimatorResult l{1.0, 0.1, 100}, u{2.0, 0.2, 100};
    const Interval ci = confidence_interval(l, u, 0.05);
    CHECK(ci.low == doctest::Approx(1.0 - 1.959963984540054 * 0.1).epsilon(1e-14));
    CHECK(ci.high == doctest::Approx(2.0 + 1.959963984540054 * 0.2).epsilon(1e-14));
    const EstimatorResult exact{3.0, 0.0, 100};
    const Interval point = confidence_interval(exact, exact, 0.05);
    CHECK(point.low == 3.0);
    CHECK(point.high == 3.0);
    CHECK_THROWS_AS(confidence_interval(l, u, 0.0), std::invalid_argument);
  }

  TEST_CASE("interpolation in the monitoring frequency") {
    CHECK(discrete_barrier_interpolate(8.794, 9.74, 16, 16) == doctest::Approx(9.74));
    CHECK(discrete_barrier_interpolate(8.794, 9.74, 16, 1u << 30) == doctest::Approx(8.794).epsilon(1e-4));
    // Observed standard estimator at M = 256 is 9.08; the square-root law is
    // only asymptotic, so a few hundredths of disagreement are expected.
    CHECK(std::abs(discrete_barrier_interpolate(8.794, 9.74, 16, 256) - 9.08) < 0.06);
  }

  TEST_CASE("invalid run options") {
    const PricingProblem p(one_asset(90, 0.3, 1), call());
    CHECK_THROWS_AS(price(p, opts(1)), std::invalid_argument);
    RunOptions o = opts(100);
    o.alpha = 1.0;
    CHECK_THROWS_AS(price(p, o), std::invalid_argument);
  }

  TEST_CASE("single-event problems report the exact estimator") {
    const auto one = price(PricingProblem(one_asset(90, 0.3, 2), call()), opts(2000));
    CHECK(one.q_exact.has_value());
    const auto two = price(PricingProblem(two_asset(0.0, 2), call()), opts(2000));
    CHECK_FALSE(two.q_exact.has_value());
  }
}
