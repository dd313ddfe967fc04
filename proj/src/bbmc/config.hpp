#pragma once

// JSON configuration files.
//
//   {
//     "name": "table1a",
//     "assets": 1,
//     "spot": [100],
//     "rate": 0.1,
//     "grid": {"maturity": 0.5, "steps": 1},      // or {"dates": [0, 0.25, 0.5]}
//     "regimes": [{
//       "mu": [0.1],                                // optional, defaults to rate
//       "sigma": [0.3],
//       "corr": [[1]],
//       "lower": [90],                              // null = no barrier
//       "upper": [null]
//     }],
//     "option": {"kind": "call", "asset": 0, "strike": 100,
//                "knock": "out", "rebate": 0},
//     "run": {"paths": 400000, "seed": 1, "alpha": 0.05, "m": [1, 2, 4]}
//   }
//
// A single regime applies to every interval of the grid; otherwise there
// must be one regime per interval.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbmc/model.hpp"

namespace bbmc {

/// Malformed or unreadable configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunDefaults {
  std::uint64_t paths = 100000;
  std::uint64_t seed = 1;
  double alpha = 0.05;
  std::vector<std::size_t> m_values;
};

struct Config {
  std::string name;
  MarketModel model;
  OptionSpec option;
  RunDefaults run;
};

Config parse_config(const std::string& json_text);
Config load_config(const std::filesystem::path& path);

}  // namespace bbmc
