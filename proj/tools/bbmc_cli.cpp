// Command-line front end. Talks to the engine only through the C API.
//
//   bbmc price <config> [--paths N] [--seed S] [--alpha A] [--steps M]
//   bbmc sweep <config> [--m 1,2,4,...] [--paths N] [--seed S]
//   bbmc table <1|2|3|4> [--paths N] [--seed S] [--m ...]
//   bbmc fit <csv|json> --kind exp|power [--min-m M]
//
// Exit status: 0 success, 1 invalid input or run failure, 2 golden check
// failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bbmc/bbmc.h"

namespace {

constexpr int kExitError = 1;
constexpr int kExitGolden = 2;

int report_error(const char* context) {
  std::fprintf(stderr, "bbmc %s: %s\n", context, bbmc_last_error());
  return kExitError;
}

struct RunFlags {
  std::optional<uint64_t> paths;
  std::optional<uint64_t> seed;
  std::optional<double> alpha;
  unsigned workers = 0;
  std::string format = "csv";
  std::string out;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--paths", paths, "Number of simulated paths")->check(CLI::Range(uint64_t{2}, UINT64_MAX));
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_option("--alpha", alpha, "Significance level of the confidence interval")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--workers", workers, "Worker threads (0 = all cores)");
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out, "Write output to this file instead of stdout");
  }

  bbmc_run_options resolve(const bbmc_config* cfg) const {
    bbmc_run_options o;
    bbmc_config_run_options(cfg, &o);
    if (paths) o.n_paths = *paths;
    if (seed) o.seed = *seed;
    if (alpha) o.alpha = *alpha;
    o.workers = workers;
    return o;
  }

  bbmc_format fmt() const { return format == "json" ? BBMC_FORMAT_JSON : BBMC_FORMAT_CSV; }
};

int emit(char* text, const std::string& path) {
  int rc = 0;
  if (path.empty()) {
    std::fputs(text, stdout);
  } else {
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) {
      std::fprintf(stderr, "bbmc: cannot write %s\n", path.c_str());
      rc = kExitError;
    }
  }
  bbmc_string_free(text);
  return rc;
}

class ConfigHandle {
 public:
  ConfigHandle() = default;
  ConfigHandle(const ConfigHandle&) = delete;
  ConfigHandle& operator=(const ConfigHandle&) = delete;
  ~ConfigHandle() { bbmc_config_free(cfg_); }

  bbmc_status load(const std::string& path) { return bbmc_config_load(path.c_str(), &cfg_); }
  bbmc_config* get() const { return cfg_; }

 private:
  bbmc_config* cfg_ = nullptr;
};

int cmd_price(const std::string& path, const RunFlags& flags, std::optional<size_t> steps) {
  ConfigHandle cfg;
  if (cfg.load(path) != BBMC_OK) return report_error("price");
  if (steps && bbmc_config_set_steps(cfg.get(), *steps) != BBMC_OK) return report_error("price");
  const bbmc_run_options opts = flags.resolve(cfg.get());
  bbmc_report report;
  if (bbmc_price(cfg.get(), &opts, &report) != BBMC_OK) return report_error("price");
  char* text = nullptr;
  if (bbmc_report_format(&report, path.c_str(), flags.fmt(), &text) != BBMC_OK) return report_error("price");
  return emit(text, flags.out);
}

int cmd_sweep(const std::string& path, const RunFlags& flags, std::vector<size_t> m_values) {
  ConfigHandle cfg;
  if (cfg.load(path) != BBMC_OK) return report_error("sweep");
  if (m_values.empty()) {
    m_values.resize(bbmc_config_sweep_m(cfg.get(), nullptr, 0));
    bbmc_config_sweep_m(cfg.get(), m_values.data(), m_values.size());
  }
  if (m_values.empty()) {
    std::fprintf(stderr, "bbmc sweep: no M values given and none in %s\n", path.c_str());
    return kExitError;
  }
  const bbmc_run_options opts = flags.resolve(cfg.get());
  bbmc_sweep* sweep = nullptr;
  if (bbmc_sweep_run(cfg.get(), m_values.data(), m_values.size(), &opts, &sweep) != BBMC_OK)
    return report_error("sweep");
  char* text = nullptr;
  const bbmc_status st = bbmc_sweep_format(sweep, flags.fmt(), &text);
  bbmc_sweep_free(sweep);
  if (st != BBMC_OK) return report_error("sweep");
  return emit(text, flags.out);
}

int cmd_table(int id, std::optional<uint64_t> paths, std::optional<uint64_t> seed,
              const std::vector<size_t>& m_values, unsigned workers, const std::string& config_dir) {
  bbmc_table_options opts;
  bbmc_table_options_init(&opts);
  if (paths) opts.n_paths = *paths;
  if (seed) opts.seed = *seed;
  if (!m_values.empty()) {
    opts.m_values = m_values.data();
    opts.m_count = m_values.size();
  }
  opts.workers = workers;
  if (!config_dir.empty()) opts.config_dir = config_dir.c_str();

  char* text = nullptr;
  int passed = 0;
  if (bbmc_table_reproduce(id, &opts, &text, &passed) != BBMC_OK) return report_error("table");
  std::fputs(text, stdout);
  bbmc_string_free(text);
  return passed ? 0 : kExitGolden;
}

int cmd_fit(const std::string& path, const std::string& kind, size_t min_m) {
  bbmc_sweep* sweep = nullptr;
  if (bbmc_sweep_load(path.c_str(), &sweep) != BBMC_OK) return report_error("fit");
  bbmc_fit fit;
  const bbmc_fit_kind k = kind == "power" ? BBMC_FIT_POWER : BBMC_FIT_EXPONENTIAL;
  const bbmc_status st = bbmc_sweep_fit(sweep, k, min_m, &fit);
  bbmc_sweep_free(sweep);
  if (st != BBMC_OK) return report_error("fit");
  std::printf("kind,slope,intercept,r_squared,points\n%s,%.17g,%.17g,%.17g,%zu\n",
              k == BBMC_FIT_POWER ? "power" : "exp", fit.slope, fit.intercept, fit.r_squared, fit.points_used);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brownian-bridge Monte Carlo pricer for multi-asset barrier options"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bbmc_version());

  std::string config_path;
  RunFlags price_flags;
  std::optional<size_t> steps;
  auto* price = app.add_subcommand("price", "Price one configuration");
  price->add_option("config", config_path, "JSON configuration file")->required();
  price->add_option("--steps", steps, "Override the grid with M equal steps")->check(CLI::PositiveNumber);
  price_flags.add_to(price);

  RunFlags sweep_flags;
  std::vector<size_t> sweep_m;
  auto* sweep = app.add_subcommand("sweep", "Price a configuration for a list of step counts");
  sweep->add_option("config", config_path, "JSON configuration file")->required();
  sweep->add_option("--m", sweep_m, "Step counts, e.g. 1,2,4,8")->delimiter(',');
  sweep_flags.add_to(sweep);

  int table_id = 0;
  std::optional<uint64_t> table_paths, table_seed;
  std::vector<size_t> table_m;
  unsigned table_workers = 0;
  std::string config_dir;
  auto* table = app.add_subcommand("table", "Reproduce a published comparison table");
  table->add_option("id", table_id, "Table number")->required()->check(CLI::Range(1, 4));
  table->add_option("--paths", table_paths, "Override the published path count");
  table->add_option("--seed", table_seed, "Random seed");
  table->add_option("--m", table_m, "Override the step counts")->delimiter(',');
  table->add_option("--workers", table_workers, "Worker threads (0 = all cores)");
  table->add_option("--config-dir", config_dir, "Directory with the shipped configurations");

  std::string fit_path, fit_kind = "exp";
  size_t min_m = 1;
  auto* fit = app.add_subcommand("fit", "Fit the convergence rate of Q_U - Q_L from sweep output");
  fit->add_option("file", fit_path, "CSV or JSON written by 'sweep'")->required();
  fit->add_option("--kind", fit_kind, "exp: ln gap vs M, power: ln gap vs ln M")
      ->check(CLI::IsMember({"exp", "power"}));
  fit->add_option("--min-m", min_m, "Ignore rows with smaller M");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  if (*price) return cmd_price(config_path, price_flags, steps);
  if (*sweep) return cmd_sweep(config_path, sweep_flags, sweep_m);
  if (*table) return cmd_table(table_id, table_paths, table_seed, table_m, table_workers, config_dir);
  if (*fit) return cmd_fit(fit_path, fit_kind, min_m);
  return kExitError;
}
