/*
 * bbmc: Monte Carlo pricing of multi-asset options with continuously
 * monitored barriers using Brownian-bridge no-hit weights and Frechet
 * bounds.
 *
 * C interface. Objects are opaque handles created and destroyed by the
 * library. Every fallible call returns a bbmc_status; on failure a
 * description is available from bbmc_last_error() on the calling thread.
 * Strings returned through char** are owned by the caller and must be
 * released with bbmc_string_free().
 */
#ifndef BBMC_H
#define BBMC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BBMC_BUILDING)
#    define BBMC_API __declspec(dllexport)
#  else
#    define BBMC_API __declspec(dllimport)
#  endif
#else
#  define BBMC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bbmc_status {
  BBMC_OK = 0,
  BBMC_ERR_VALIDATION = 1,        /* model or option violates an invariant */
  BBMC_ERR_CONFIG = 2,            /* unreadable or malformed input file */
  BBMC_ERR_ARGUMENT = 3,          /* bad argument (null handle, bad M list, ...) */
  BBMC_ERR_INSUFFICIENT_DATA = 4, /* convergence fit has too few usable rows */
  BBMC_ERR_INTERNAL = 5
} bbmc_status;

typedef enum bbmc_mode {
  BBMC_MODE_KNOCK_OUT = 0,
  BBMC_MODE_KNOCK_IN = 1,
  BBMC_MODE_REBATE = 2
} bbmc_mode;

typedef enum bbmc_fit_kind { BBMC_FIT_EXPONENTIAL = 0, BBMC_FIT_POWER = 1 } bbmc_fit_kind;

typedef enum bbmc_format { BBMC_FORMAT_CSV = 0, BBMC_FORMAT_JSON = 1 } bbmc_format;

typedef struct bbmc_config bbmc_config;
typedef struct bbmc_sweep bbmc_sweep;

typedef struct bbmc_run_options {
  uint64_t n_paths;
  uint64_t seed;
  double alpha;     /* significance of the confidence interval */
  unsigned workers; /* 0 = one per hardware thread */
} bbmc_run_options;

typedef struct bbmc_estimate {
  double mean;
  double std_error;
  uint64_t n_paths;
} bbmc_estimate;

typedef struct bbmc_point {
  double value;
  double half_width;
} bbmc_point;

typedef struct bbmc_report {
  bbmc_mode mode;
  size_t steps;
  uint64_t seed;
  double alpha;
  bbmc_estimate q_s;     /* discretely monitored estimator */
  bbmc_estimate q_upper; /* Frechet upper-bound weights */
  bbmc_estimate q_indep; /* independence weights */
  bbmc_estimate q_lower; /* Frechet lower-bound weights */
  bbmc_estimate q_exact; /* exact weights; valid iff has_exact */
  int has_exact;
  bbmc_estimate gap;     /* q_upper - q_lower, path by path */
  bbmc_estimate vanilla; /* no barrier */
  bbmc_point q0, q1, q2;
  double ci_low, ci_high;
  uint64_t ordering_violations;
} bbmc_report;

typedef struct bbmc_fit {
  bbmc_fit_kind kind;
  double slope;
  double intercept;
  double r_squared;
  size_t points_used;
} bbmc_fit;

typedef struct bbmc_table_options {
  uint64_t n_paths;        /* 0 = published path count */
  uint64_t seed;
  const size_t* m_values;  /* NULL = published M list */
  size_t m_count;
  unsigned workers;
  const char* config_dir;  /* NULL = built-in default */
} bbmc_table_options;

BBMC_API const char* bbmc_version(void);
BBMC_API const char* bbmc_last_error(void);
BBMC_API void bbmc_string_free(char* s);

BBMC_API void bbmc_run_options_init(bbmc_run_options* options);
BBMC_API void bbmc_table_options_init(bbmc_table_options* options);

/* Configuration (model + option + run defaults). The handle is validated on
 * creation; invalid models are rejected with BBMC_ERR_VALIDATION. */
BBMC_API bbmc_status bbmc_config_load(const char* path, bbmc_config** out);
BBMC_API bbmc_status bbmc_config_parse(const char* json, bbmc_config** out);
BBMC_API void bbmc_config_free(bbmc_config* config);
BBMC_API size_t bbmc_config_assets(const bbmc_config* config);
BBMC_API size_t bbmc_config_steps(const bbmc_config* config);
/* Replaces the grid with `steps` equal intervals (constant-regime models). */
BBMC_API bbmc_status bbmc_config_set_steps(bbmc_config* config, size_t steps);
/* Run options and M list stored in the configuration file. */
BBMC_API void bbmc_config_run_options(const bbmc_config* config, bbmc_run_options* out);
BBMC_API size_t bbmc_config_sweep_m(const bbmc_config* config, size_t* out, size_t capacity);

/* Prices according to the option's knock type and rebate. */
BBMC_API bbmc_status bbmc_price(const bbmc_config* config, const bbmc_run_options* options,
                                bbmc_report* out);
BBMC_API bbmc_status bbmc_price_mode(const bbmc_config* config, bbmc_mode mode,
                                     const bbmc_run_options* options, bbmc_report* out);
BBMC_API bbmc_status bbmc_report_format(const bbmc_report* report, const char* label,
                                        bbmc_format format, char** out);

BBMC_API bbmc_status bbmc_sweep_run(const bbmc_config* config, const size_t* m_values, size_t count,
                                    const bbmc_run_options* options, bbmc_sweep** out);
BBMC_API bbmc_status bbmc_sweep_load(const char* path, bbmc_sweep** out);
BBMC_API void bbmc_sweep_free(bbmc_sweep* sweep);
BBMC_API size_t bbmc_sweep_size(const bbmc_sweep* sweep);
BBMC_API bbmc_status bbmc_sweep_row(const bbmc_sweep* sweep, size_t index, size_t* m, bbmc_report* out);
BBMC_API bbmc_status bbmc_sweep_format(const bbmc_sweep* sweep, bbmc_format format, char** out);
BBMC_API bbmc_status bbmc_sweep_fit(const bbmc_sweep* sweep, bbmc_fit_kind kind, size_t min_m,
                                    bbmc_fit* out);

/* Runs the shipped configurations of table 1-4 and compares against the
 * published values. *passed is set to 1 when every golden check passes. */
BBMC_API bbmc_status bbmc_table_reproduce(int table_id, const bbmc_table_options* options,
                                          char** report_text, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* BBMC_H */
