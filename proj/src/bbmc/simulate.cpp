#include "bbmc/simulate.hpp"

#include <cmath>

namespace bbmc {

std::vector<double> step(std::span<const double> prev, const Regime& regime, double dt,
                         std::span<const double> z) {
  std::vector<double> next(prev.size());
  const double sqrt_dt = std::sqrt(dt);
  for (std::size_t i = 0; i < prev.size(); ++i) {
    const double sigma = regime.sigma[i];
    next[i] = prev[i] * std::exp((regime.mu[i] - 0.5 * sigma * sigma) * dt + sigma * sqrt_dt * z[i]);
  }
  return next;
}

void correlate(const Matrix& factor, std::span<const double> eps, std::span<double> out) {
  for (std::size_t i = 0; i < factor.n; ++i) {
    double z = 0.0;
    for (std::size_t j = 0; j <= i; ++j) z += factor(i, j) * eps[j];
    out[i] = z;
  }
}

PathGenerator::PathGenerator(const PricingProblem& problem, std::uint64_t seed)
    : problem_(&problem),
      stream_(seed),
      assets_(problem.model().assets),
      steps_(problem.model().grid.steps()) {
  const MarketModel& model = problem.model();
  log_spot_.resize(assets_);
  for (std::size_t i = 0; i < assets_; ++i) log_spot_[i] = std::log(model.spot[i]);

  drift_.resize(steps_ * assets_);
  diffusion_.resize(steps_ * assets_);
  variance_.resize(steps_ * assets_);
  events_.resize(steps_);
  for (std::size_t m = 0; m < steps_; ++m) {
    const Regime& reg = model.regimes[m];
    const double dt = model.grid.dt(m);
    for (std::size_t i = 0; i < assets_; ++i) {
      const double s = reg.sigma[i];
      drift_[m * assets_ + i] = (reg.mu[i] - 0.5 * s * s) * dt;
      diffusion_[m * assets_ + i] = s * std::sqrt(dt);
      variance_[m * assets_ + i] = s * s * dt;
      if (reg.lower[i]) events_[m].push_back({i, BarrierSide::lower, std::log(*reg.lower[i])});
      if (reg.upper[i]) events_[m].push_back({i, BarrierSide::upper, std::log(*reg.upper[i])});
    }
  }
}

void PathGenerator::advance(std::uint64_t path, std::size_t m, std::span<double> x,
                            std::span<double> eps) const {
  stream_.normals(path, static_cast<std::uint32_t>(m), eps.data(), assets_);
  const Matrix& l = problem_->factor(m);
  const double* drift = drift_.data() + m * assets_;
  const double* diff = diffusion_.data() + m * assets_;
  for (std::size_t i = 0; i < assets_; ++i) {
    double z = 0.0;
    for (std::size_t j = 0; j <= i; ++j) z += l(i, j) * eps[j];
    x[i] += drift[i] + diff[i] * z;
  }
}

bool PathGenerator::inside(std::size_t m, std::span<const double> x) const {
  for (const LogBarrier& b : events_[m]) {
    const double v = x[b.asset];
    if (b.side == BarrierSide::lower ? v <= b.log_level : v >= b.log_level) return false;
  }
  return true;
}

PathState simulate_path(const PricingProblem& problem, std::uint64_t seed, std::uint64_t path_index) {
  const PathGenerator gen(problem, seed);
  const std::size_t d = gen.assets();
  const std::size_t steps = gen.steps();

  PathState out;
  out.assets = d;
  out.path_index = path_index;
  out.values.resize((steps + 1) * d);

  std::vector<double> x(gen.log_spot().begin(), gen.log_spot().end());
  std::vector<double> eps(d);
  for (std::size_t i = 0; i < d; ++i) out.values[i] = problem.model().spot[i];
  out.alive_discrete = gen.inside(0, x);
  for (std::size_t m = 0; m < steps; ++m) {
    gen.advance(path_index, m, x, eps);
    for (std::size_t i = 0; i < d; ++i) out.values[(m + 1) * d + i] = std::exp(x[i]);
    if (!gen.inside(m, x) || (m + 1 < steps && !gen.inside(m + 1, x))) out.alive_discrete = false;
  }
  return out;
}

}  // namespace bbmc
