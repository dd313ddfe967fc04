#include "bbmc/estimators.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "bbmc/bridge.hpp"
#include "bbmc/rng.hpp"
#include "bbmc/simulate.hpp"

namespace bbmc {
namespace {

// Paths are reduced in fixed blocks merged in block order, so the result
// does not depend on how blocks are spread over workers.
constexpr std::uint64_t kBlockSize = 1024;

enum Channel : std::size_t { kVanilla, kStandard, kLower, kIndep, kUpper, kExact, kGap, kChannels };

struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    n += 1.0;
    const double delta = x - mean;
    mean += delta / n;
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    if (n == 0.0) {
      *this = o;
      return;
    }
    const double total = n + o.n;
    const double delta = o.mean - mean;
    mean += delta * (o.n / total);
    m2 += o.m2 + delta * delta * (n * o.n / total);
    n = total;
  }

  EstimatorResult result() const {
    EstimatorResult r;
    r.mean = mean;
    r.n_paths = static_cast<std::uint64_t>(n);
    r.std_error = n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0;
    return r;
  }
};

struct BlockMoments {
  std::array<Moments, kChannels> ch;
  std::uint64_t violations = 0;
};

bool ordered(PricingMode mode, const PathContribution& c) {
  const bool bounds = c.lower <= c.indep && c.indep <= c.upper;
  switch (mode) {
    case PricingMode::knock_out:
      return bounds && c.upper <= c.standard;
    case PricingMode::knock_in:
      return bounds && c.standard <= c.lower;
    case PricingMode::rebate:
      return bounds;
  }
  return bounds;
}

struct Scratch {
  std::vector<double> x, prev, eps, terminal, hits;
  explicit Scratch(std::size_t d) : x(d), prev(d), eps(d), terminal(d) { hits.reserve(2 * d); }
};

struct PathWeights {
  bool alive = true;
  double lower = 1.0, indep = 1.0, upper = 1.0;
  double payoff = 0.0;  // discounted
};

PathWeights path_weights(const PricingProblem& problem, const PathGenerator& gen, std::uint64_t path,
                         Scratch& s) {
  PathWeights w;
  const std::size_t d = gen.assets();
  const std::size_t steps = gen.steps();
  std::copy(gen.log_spot().begin(), gen.log_spot().end(), s.x.begin());
  w.alive = gen.inside(0, s.x);

  for (std::size_t m = 0; m < steps; ++m) {
    std::copy(s.x.begin(), s.x.end(), s.prev.begin());
    gen.advance(path, m, s.x, s.eps);
    if (!w.alive) continue;
    if (!gen.inside(m, s.x) || (m + 1 < steps && !gen.inside(m + 1, s.x))) {
      w.alive = false;
      continue;
    }
    const auto events = gen.events(m);
    if (events.empty()) continue;
    s.hits.clear();
    for (const LogBarrier& b : events)
      s.hits.push_back(xi_log(s.prev[b.asset], s.x[b.asset], b.log_level, gen.variance(m, b.asset), b.side));
    const BridgeWeights bw = weights_from_hits(s.hits);
    w.lower *= bw.p_lower;
    w.indep *= bw.p_indep;
    w.upper *= bw.p_upper;
  }

  for (std::size_t i = 0; i < d; ++i) s.terminal[i] = std::exp(s.x[i]);
  w.payoff = problem.discount() * problem.spec().payoff(s.terminal);
  return w;
}

PathContribution contributions(const PricingProblem& problem, PricingMode mode, const PathWeights& w) {
  PathContribution c;
  const double v = w.payoff;
  const double alive = w.alive ? 1.0 : 0.0;
  const double wl = alive * w.lower, wi = alive * w.indep, wu = alive * w.upper;
  c.vanilla = v;
  switch (mode) {
    case PricingMode::knock_out:
      c.standard = v * alive;
      c.lower = v * wl;
      c.indep = v * wi;
      c.upper = v * wu;
      break;
    case PricingMode::knock_in:
      // Complementing the survival weight reverses the bounds.
      c.standard = v * (1.0 - alive);
      c.lower = v * (1.0 - wu);
      c.indep = v * (1.0 - wi);
      c.upper = v * (1.0 - wl);
      break;
    case PricingMode::rebate: {
      const double r = problem.discount() * problem.spec().rebate;
      auto blend = [&](double weight) { return v * weight + r * (1.0 - weight); };
      c.standard = blend(alive);
      const double a = blend(wl), b = blend(wu);
      c.lower = std::min(a, b);
      c.upper = std::max(a, b);
      c.indep = std::clamp(blend(wi), c.lower, c.upper);
      break;
    }
  }
  // With one event per interval all three weights coincide with the exact one.
  c.exact = mode == PricingMode::knock_in ? c.lower : c.upper;
  return c;
}

PricingReport run_mode(const PricingProblem& problem, PricingMode mode, const RunOptions& options) {
  if (options.n_paths < 2) throw std::invalid_argument("at least two paths are required");
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");

  const PathGenerator gen(problem, options.seed);
  const std::uint64_t n_blocks = (options.n_paths + kBlockSize - 1) / kBlockSize;
  std::vector<BlockMoments> blocks(n_blocks);
  std::atomic<std::uint64_t> next{0};

  auto worker = [&] {
    Scratch scratch(gen.assets());
    for (std::uint64_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
      BlockMoments& acc = blocks[b];
      const std::uint64_t end = std::min(options.n_paths, (b + 1) * kBlockSize);
      for (std::uint64_t p = b * kBlockSize; p < end; ++p) {
        const PathContribution c = contributions(problem, mode, path_weights(problem, gen, p, scratch));
        acc.ch[kVanilla].add(c.vanilla);
        acc.ch[kStandard].add(c.standard);
        acc.ch[kLower].add(c.lower);
        acc.ch[kIndep].add(c.indep);
        acc.ch[kUpper].add(c.upper);
        acc.ch[kExact].add(c.exact);
        acc.ch[kGap].add(c.upper - c.lower);
        acc.violations += !ordered(mode, c);
      }
    }
  };

  unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_blocks));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }

  std::array<Moments, kChannels> total;
  std::uint64_t violations = 0;
  for (const auto& b : blocks) {
    for (std::size_t ch = 0; ch < kChannels; ++ch) total[ch].merge(b.ch[ch]);
    violations += b.violations;
  }

  PricingReport report;
  report.mode = mode;
  report.steps = gen.steps();
  report.seed = options.seed;
  report.alpha = options.alpha;
  report.vanilla = total[kVanilla].result();
  report.q_s = total[kStandard].result();
  report.q_lower = total[kLower].result();
  report.q_indep = total[kIndep].result();
  report.q_upper = total[kUpper].result();
  report.gap = total[kGap].result();
  report.ordering_violations = violations;
  if (problem.single_event_per_interval()) report.q_exact = total[kExact].result();

  const PointEstimators pe = point_estimators(report.q_lower, report.q_indep, report.q_upper);
  report.q0 = pe.q0;
  report.q1 = pe.q1;
  report.q2 = pe.q2;
  report.ci = confidence_interval(report.q_lower, report.q_upper, options.alpha);
  return report;
}

PointEstimate midpoint(const EstimatorResult& a, const EstimatorResult& b) {
  const double lo = std::min(a.mean, b.mean);
  const double hi = std::max(a.mean, b.mean);
  return {0.5 * (a.mean + b.mean), 0.5 * (hi - lo + a.std_error + b.std_error)};
}

}  // namespace

PathContribution evaluate_path(const PricingProblem& problem, PricingMode mode, std::uint64_t seed,
                               std::uint64_t path_index) {
  const PathGenerator gen(problem, seed);
  Scratch scratch(gen.assets());
  return contributions(problem, mode, path_weights(problem, gen, path_index, scratch));
}

PricingReport price(const PricingProblem& problem, const RunOptions& options) {
  return run_mode(problem, PricingMode::knock_out, options);
}

PricingReport knock_in_price(const PricingProblem& problem, const RunOptions& options) {
  return run_mode(problem, PricingMode::knock_in, options);
}

PricingReport rebate_price(const PricingProblem& problem, const RunOptions& options) {
  return run_mode(problem, PricingMode::rebate, options);
}

PricingMode mode_for(const OptionSpec& spec) {
  if (spec.knock == KnockType::in) return PricingMode::knock_in;
  return spec.rebate > 0.0 ? PricingMode::rebate : PricingMode::knock_out;
}

PricingReport run(const PricingProblem& problem, const RunOptions& options) {
  return run_mode(problem, mode_for(problem.spec()), options);
}

PointEstimators point_estimators(const EstimatorResult& lower, const EstimatorResult& indep,
                                 const EstimatorResult& upper) {
  return {midpoint(lower, upper), midpoint(lower, indep), midpoint(indep, upper)};
}

Interval confidence_interval(const EstimatorResult& lower, const EstimatorResult& upper, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  const double z = normal_quantile(1.0 - 0.5 * alpha);
  return {lower.mean - z * lower.std_error, upper.mean + z * upper.std_error};
}

double discrete_barrier_interpolate(double q_continuous, double q_lowfreq, std::size_t m_low,
                                    std::size_t m_target) {
  if (m_low < 1 || m_target < 1) throw std::invalid_argument("step counts must be at least 1");
  const double lambda = (q_lowfreq - q_continuous) * std::sqrt(static_cast<double>(m_low));
  return q_continuous + lambda / std::sqrt(static_cast<double>(m_target));
}

}  // namespace bbmc
