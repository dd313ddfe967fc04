/* The public header must compile as C. */
#include <stdio.h>

#include "bbmc/bbmc.h"

int main(void) {
  bbmc_config* cfg = NULL;
  bbmc_run_options opts;
  bbmc_report rep;
  const char* json =
      "{\"assets\": 1, \"spot\": [100], \"rate\": 0.1,"
      " \"grid\": {\"maturity\": 0.5, \"steps\": 4},"
      " \"regimes\": [{\"sigma\": [0.3], \"corr\": [[1]], \"lower\": [90], \"upper\": [null]}],"
      " \"option\": {\"strike\": 100}}";
  if (bbmc_config_parse(json, &cfg) != BBMC_OK) {
    fprintf(stderr, "%s\n", bbmc_last_error());
    return 1;
  }
  bbmc_run_options_init(&opts);
  opts.n_paths = 2000;
  if (bbmc_price(cfg, &opts, &rep) != BBMC_OK) {
    bbmc_config_free(cfg);
    return 1;
  }
  bbmc_config_free(cfg);
  printf("q_exact %.6f (%.6f)\n", rep.q_exact.mean, rep.q_exact.std_error);
  return rep.has_exact && rep.q_exact.mean > 0.0 ? 0 : 1;
}
