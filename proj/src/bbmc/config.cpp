#include "bbmc/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bbmc {
namespace {

using nlohmann::json;

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::vector<double> numbers(const json& j, const char* what, std::size_t expected) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError(std::string(what) + " must contain numbers");
    out.push_back(v.get<double>());
  }
  if (out.size() != expected)
    throw ConfigError(std::string(what) + " must have " + std::to_string(expected) + " entries");
  return out;
}

std::vector<std::optional<double>> barriers(const json& j, const char* what, std::size_t d) {
  if (j.is_null()) return std::vector<std::optional<double>>(d);
  if (!j.is_array() || j.size() != d)
    throw ConfigError(std::string(what) + " must be an array of " + std::to_string(d) + " entries");
  std::vector<std::optional<double>> out;
  for (const auto& v : j) {
    if (v.is_null()) out.emplace_back();
    else if (v.is_number()) out.emplace_back(v.get<double>());
    else throw ConfigError(std::string(what) + " entries must be numbers or null");
  }
  return out;
}

Regime parse_regime(const json& j, std::size_t d, double rate) {
  Regime r;
  r.sigma = numbers(require(j, "sigma"), "sigma", d);
  r.mu = j.contains("mu") ? numbers(j.at("mu"), "mu", d) : std::vector<double>(d, rate);
  const json& corr = require(j, "corr");
  if (!corr.is_array() || corr.size() != d) throw ConfigError("corr must be a d x d array");
  r.corr = Matrix(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto row = numbers(corr[i], "corr row", d);
    for (std::size_t k = 0; k < d; ++k) r.corr(i, k) = row[k];
  }
  r.lower = barriers(j.value("lower", json()), "lower", d);
  r.upper = barriers(j.value("upper", json()), "upper", d);
  return r;
}

OptionSpec parse_option(const json& j) {
  OptionSpec spec;
  const std::string kind = j.value("kind", "call");
  if (kind == "call") spec.payoff.kind = PayoffKind::call;
  else if (kind == "digital") spec.payoff.kind = PayoffKind::digital;
  else throw ConfigError("unknown option kind '" + kind + "' (expected call or digital)");
  spec.payoff.asset = j.value("asset", std::size_t{0});
  spec.payoff.strike = require(j, "strike").get<double>();
  const std::string knock = j.value("knock", "out");
  if (knock == "out") spec.knock = KnockType::out;
  else if (knock == "in") spec.knock = KnockType::in;
  else throw ConfigError("knock must be 'out' or 'in'");
  spec.rebate = j.value("rebate", 0.0);
  return spec;
}

}  // namespace

Config parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }

  try {
    Config cfg;
    cfg.name = j.value("name", "");
    MarketModel& m = cfg.model;
    m.assets = require(j, "assets").get<std::size_t>();
    m.spot = numbers(require(j, "spot"), "spot", m.assets);
    m.rate = require(j, "rate").get<double>();

    const json& grid = require(j, "grid");
    if (grid.contains("dates")) {
      m.grid = TimeGrid(grid.at("dates").get<std::vector<double>>());
    } else {
      const auto steps = require(grid, "steps").get<std::size_t>();
      if (steps == 0) throw ConfigError("grid.steps must be at least 1");
      m.grid = TimeGrid::uniform(require(grid, "maturity").get<double>(), steps);
    }

    const json& regimes = require(j, "regimes");
    if (!regimes.is_array() || regimes.empty()) throw ConfigError("regimes must be a non-empty array");
    for (const auto& r : regimes) m.regimes.push_back(parse_regime(r, m.assets, m.rate));
    if (m.regimes.size() == 1 && m.grid.steps() > 1) m.regimes.assign(m.grid.steps(), m.regimes.front());

    cfg.option = parse_option(require(j, "option"));

    if (j.contains("run")) {
      const json& run = j.at("run");
      cfg.run.paths = run.value("paths", cfg.run.paths);
      cfg.run.seed = run.value("seed", cfg.run.seed);
      cfg.run.alpha = run.value("alpha", cfg.run.alpha);
      if (run.contains("m")) cfg.run.m_values = run.at("m").get<std::vector<std::size_t>>();
    }
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace bbmc
