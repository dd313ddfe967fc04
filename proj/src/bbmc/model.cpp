#include "bbmc/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bbmc {

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

TimeGrid::TimeGrid(std::vector<double> dates) : dates_(std::move(dates)) {}

TimeGrid TimeGrid::uniform(double maturity, std::size_t steps) {
  std::vector<double> dates(steps + 1);
  for (std::size_t m = 0; m <= steps; ++m)
    dates[m] = maturity * static_cast<double>(m) / static_cast<double>(steps);
  dates.back() = maturity;
  return TimeGrid(std::move(dates));
}

Regime Regime::flat(std::size_t assets, double rate, double sigma, double rho) {
  Regime r;
  r.mu.assign(assets, rate);
  r.sigma.assign(assets, sigma);
  r.corr = Matrix(assets, rho);
  for (std::size_t i = 0; i < assets; ++i) r.corr(i, i) = 1.0;
  r.lower.assign(assets, std::nullopt);
  r.upper.assign(assets, std::nullopt);
  return r;
}

std::size_t Regime::barrier_count() const {
  std::size_t n = 0;
  for (const auto& b : lower) n += b.has_value();
  for (const auto& b : upper) n += b.has_value();
  return n;
}

namespace {

bool same_regime(const Regime& a, const Regime& b) {
  return a.mu == b.mu && a.sigma == b.sigma && a.corr.a == b.corr.a && a.lower == b.lower &&
         a.upper == b.upper;
}

}  // namespace

bool MarketModel::constant_regime() const {
  for (std::size_t m = 1; m < regimes.size(); ++m)
    if (!same_regime(regimes[0], regimes[m])) return false;
  return !regimes.empty();
}

MarketModel MarketModel::regridded(std::size_t steps) const {
  if (!constant_regime())
    throw ValidationError("cannot re-grid a model with time-varying regimes");
  if (steps == 0) throw ValidationError("step count must be at least 1");
  MarketModel out = *this;
  out.grid = TimeGrid::uniform(grid.maturity(), steps);
  out.regimes.assign(steps, regimes.front());
  return out;
}

double Payoff::operator()(std::span<const double> terminal) const {
  switch (kind) {
    case PayoffKind::call:
      return std::max(terminal[asset] - strike, 0.0);
    case PayoffKind::digital:
      return terminal[asset] > strike ? 1.0 : 0.0;
    case PayoffKind::custom:
      return custom(terminal);
  }
  return 0.0;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < problems.size(); ++i) os << (i ? "; " : "") << problems[i];
  return os.str();
}

Matrix factor_correlation(const Matrix& corr) {
  const std::size_t n = corr.n;
  Eigen::MatrixXd c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = corr(i, j);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
  Eigen::VectorXd lambda = eig.eigenvalues();
  if (n > 0 && lambda.minCoeff() < -kPsdTolerance) {
    std::ostringstream os;
    os << "correlation matrix is not positive semi-definite (smallest eigenvalue "
       << lambda.minCoeff() << ")";
    throw ValidationError(os.str());
  }

  // Repair: clip small negative eigenvalues and restore the unit diagonal.
  if (n > 0 && lambda.minCoeff() < 0.0) {
    lambda = lambda.cwiseMax(0.0);
    c = eig.eigenvectors() * lambda.asDiagonal() * eig.eigenvectors().transpose();
    Eigen::VectorXd scale = c.diagonal().cwiseSqrt().cwiseInverse();
    c = scale.asDiagonal() * c * scale.asDiagonal();
  }

  // Semi-definite Cholesky: a vanishing pivot zeroes its column, which is the
  // exact factor for PSD input with dependent rows.
  constexpr double kPivotFloor = 1e-13;
  Matrix l(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = c(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    const double pivot = d > kPivotFloor ? std::sqrt(d) : 0.0;
    l(j, j) = pivot;
    for (std::size_t i = j + 1; i < n; ++i) {
      if (pivot == 0.0) continue;
      double s = c(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / pivot;
    }
  }
  return l;
}

namespace {

void check_regime(const Regime& reg, std::size_t index, std::size_t d,
                  std::vector<std::string>& problems) {
  auto fail = [&](const std::string& what) {
    problems.push_back("regime " + std::to_string(index) + ": " + what);
  };
  if (reg.mu.size() != d) fail("mu has wrong length");
  if (reg.sigma.size() != d) fail("sigma has wrong length");
  if (reg.lower.size() != d) fail("lower has wrong length");
  if (reg.upper.size() != d) fail("upper has wrong length");
  if (reg.corr.n != d || reg.corr.a.size() != d * d) {
    fail("corr has wrong shape");
    return;
  }
  for (std::size_t i = 0; i < reg.sigma.size(); ++i)
    if (!(reg.sigma[i] > 0.0) || !std::isfinite(reg.sigma[i]))
      fail("sigma[" + std::to_string(i) + "] must be positive");
  for (double m : reg.mu)
    if (!std::isfinite(m)) fail("mu must be finite");
  for (std::size_t i = 0; i < d; ++i) {
    if (std::abs(reg.corr(i, i) - 1.0) > 1e-12) fail("corr diagonal must be 1");
    for (std::size_t j = 0; j < d; ++j) {
      const double v = reg.corr(i, j);
      if (!(v >= -1.0 && v <= 1.0)) fail("corr entries must lie in [-1, 1]");
      if (std::abs(v - reg.corr(j, i)) > 1e-12) fail("corr must be symmetric");
    }
  }
  if (reg.lower.size() == d && reg.upper.size() == d) {
    for (std::size_t i = 0; i < d; ++i) {
      if (reg.lower[i] && !(*reg.lower[i] > 0.0))
        fail("lower barrier of asset " + std::to_string(i) + " must be positive");
      if (reg.upper[i] && !(*reg.upper[i] > 0.0))
        fail("upper barrier of asset " + std::to_string(i) + " must be positive");
      if (reg.lower[i] && reg.upper[i] && !(*reg.lower[i] < *reg.upper[i]))
        fail("lower barrier must be below upper barrier for asset " + std::to_string(i));
    }
  }
}

}  // namespace

ValidationReport validate(const MarketModel& model, const OptionSpec& spec) {
  ValidationReport report;
  auto& problems = report.problems;
  const std::size_t d = model.assets;

  if (d == 0) problems.emplace_back("asset count must be positive");
  if (model.spot.size() != d) problems.emplace_back("spot has wrong length");
  for (double s : model.spot)
    if (!(s > 0.0) || !std::isfinite(s)) problems.emplace_back("spot prices must be positive");
  if (!std::isfinite(model.rate)) problems.emplace_back("rate must be finite");

  const auto& dates = model.grid.dates();
  if (dates.size() < 2) {
    problems.emplace_back("grid needs at least one step");
  } else {
    if (dates.front() != 0.0) problems.emplace_back("grid must start at t = 0");
    for (std::size_t m = 0; m + 1 < dates.size(); ++m)
      if (!(dates[m + 1] > dates[m])) {
        problems.emplace_back("grid dates must be strictly increasing");
        break;
      }
  }
  if (model.regimes.size() != model.grid.steps())
    problems.emplace_back("need exactly one regime per grid interval");

  for (std::size_t m = 0; m < model.regimes.size(); ++m) check_regime(model.regimes[m], m, d, problems);

  if (spec.payoff.kind != PayoffKind::custom && spec.payoff.asset >= d)
    problems.emplace_back("payoff asset index out of range");
  if (spec.payoff.kind == PayoffKind::custom && !spec.payoff.custom)
    problems.emplace_back("custom payoff requires a callable");
  if (!(spec.payoff.strike >= 0.0)) problems.emplace_back("strike must be non-negative");
  if (!(spec.rebate >= 0.0)) problems.emplace_back("rebate must be non-negative");
  if (spec.rebate > 0.0 && spec.knock == KnockType::in)
    problems.emplace_back("rebate is only supported for knock-out options");

  if (!model.regimes.empty() && model.spot.size() == d) {
    const Regime& r0 = model.regimes.front();
    if (r0.lower.size() == d && r0.upper.size() == d) {
      for (std::size_t i = 0; i < d; ++i) {
        const double s = model.spot[i];
        if ((r0.lower[i] && s <= *r0.lower[i]) || (r0.upper[i] && s >= *r0.upper[i]))
          problems.push_back("spot of asset " + std::to_string(i) +
                             " is not strictly inside the regime 0 barriers");
      }
    }
  }

  if (!problems.empty()) return report;

  report.factors.reserve(model.regimes.size());
  for (std::size_t m = 0; m < model.regimes.size(); ++m) {
    // Identical consecutive regimes share one factorisation.
    if (m > 0 && model.regimes[m].corr.a == model.regimes[m - 1].corr.a) {
      report.factors.push_back(report.factors.back());
      continue;
    }
    try {
      report.factors.push_back(factor_correlation(model.regimes[m].corr));
    } catch (const ValidationError& e) {
      problems.push_back("regime " + std::to_string(m) + ": " + e.what());
      report.factors.clear();
      return report;
    }
  }
  return report;
}

PricingProblem::PricingProblem(MarketModel model, OptionSpec spec)
    : model_(std::move(model)), spec_(std::move(spec)) {
  ValidationReport report = validate(model_, spec_);
  if (!report.ok()) throw ValidationError(report.summary());
  factors_ = std::move(report.factors);
  discount_ = std::exp(-model_.rate * model_.grid.maturity());
  for (const auto& r : model_.regimes)
    if (r.barrier_count() > 1) single_event_ = false;
}

}  // namespace bbmc
