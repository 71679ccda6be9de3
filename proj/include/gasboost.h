/* gasboost C API: tabular classification experiments with neural-gas
 * feature selection, quantile fuzzification, swarm-tuned gradient boosting,
 * and the usual baseline classifiers and selectors.
 *
 * All functions returning gb_status report GB_OK on success; on any other
 * status, gb_last_error() holds a diagnostic message for the calling thread.
 * Objects returned through out-parameters are owned by the caller and are
 * released with the matching *_free function. Handles are opaque.
 */
#ifndef GASBOOST_H
#define GASBOOST_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gb_status {
  GB_OK = 0,
  GB_ERROR_INVALID_ARGUMENT = 1,
  GB_ERROR_IO = 2,
  GB_ERROR_PARSE = 3,
  GB_ERROR_RUNTIME = 4
} gb_status;

const char* gb_version(void);

/* Message for the most recent failing call on this thread; empty string if
 * no call failed yet. The pointer stays valid until the next failing call. */
const char* gb_last_error(void);

/* ------------------------------------------------------------------ */
/* Datasets                                                            */

typedef struct gb_dataset gb_dataset;

/* CSV with a header row, numeric feature columns, and exactly one integer
 * `label` column holding classes 0..K-1. */
gb_status gb_dataset_load_csv(const char* path, gb_dataset** out);

/* Gaussian class clusters with centers `separation` apart; deterministic
 * per seed. */
gb_status gb_dataset_synth(int64_t n_samples, int64_t n_features,
                           int32_t n_classes, double separation, uint64_t seed,
                           gb_dataset** out);

gb_status gb_dataset_save_csv(const gb_dataset* data, const char* path);
int64_t gb_dataset_rows(const gb_dataset* data);
int64_t gb_dataset_cols(const gb_dataset* data);
int32_t gb_dataset_classes(const gb_dataset* data);
void gb_dataset_free(gb_dataset* data);

/* ------------------------------------------------------------------ */
/* Gradient-boosted trees                                              */

typedef struct gb_boost_params {
  int32_t max_depth;        /* default 6  */
  double learning_rate;     /* default 0.1 */
  int32_t n_rounds;         /* default 100 */
  double reg_lambda;        /* default 1.0 */
  double min_child_weight;  /* default 1.0 */
  double gamma_min_gain;    /* default 0.0 */
} gb_boost_params;

void gb_boost_params_defaults(gb_boost_params* params);

typedef struct gb_booster gb_booster;

gb_status gb_booster_fit(const gb_dataset* train, const gb_boost_params* params,
                         gb_booster** out);

/* `features` is row-major rows x cols; cols must match the training data.
 * labels_out needs `rows` entries; proba_out needs `rows * n_classes`. */
gb_status gb_booster_predict(const gb_booster* model, const double* features,
                             int64_t rows, int64_t cols, int32_t* labels_out);
gb_status gb_booster_predict_proba(const gb_booster* model,
                                   const double* features, int64_t rows,
                                   int64_t cols, double* proba_out);
int32_t gb_booster_classes(const gb_booster* model);

/* Human-readable per-tree preorder dump. */
gb_status gb_booster_save_text(const gb_booster* model, const char* path);
void gb_booster_free(gb_booster* model);

/* ------------------------------------------------------------------ */
/* Feature selection                                                   */

/* method: "chi2" | "pca" | "lasso" | "ngn". Fits the selector on the given
 * data (standardized internally) and writes the selection to out_path:
 * ranked indices with scores, or the projection matrix for pca. */
gb_status gb_select_save(const gb_dataset* data, const char* method, int64_t k,
                         uint64_t seed, const char* out_path);

/* Index-list variant for "chi2" | "lasso" | "ngn": fills indices_out with k
 * column indices, best first. */
gb_status gb_select_features(const gb_dataset* data, const char* method,
                             int64_t k, uint64_t seed, int64_t* indices_out);

/* ------------------------------------------------------------------ */
/* Swarm hyperparameter tuning                                         */

typedef struct gb_tune_params {
  int32_t swarm_size;  /* default 50 */
  int32_t max_iters;   /* default 100 */
  double inertia;      /* default 0.729 */
  double cognitive;    /* default 1.49445 */
  double social;       /* default 1.49445 */
  int32_t tune_rounds; /* boosting rounds inside the objective, default 50 */
  uint64_t seed;
} gb_tune_params;

void gb_tune_params_defaults(gb_tune_params* params);

/* Splits `data` 70/30 (stratified, seeded), standardizes on the training
 * side, and tunes (max_depth in 3..10, learning_rate in 0.01..0.3) against
 * 1 - accuracy on an inner validation split. Writes the per-iteration best
 * cost to trace_csv_path when non-NULL. */
gb_status gb_tune_booster(const gb_dataset* data, const gb_tune_params* params,
                          int32_t* max_depth_out, double* learning_rate_out,
                          double* best_cost_out, const char* trace_csv_path);

/* ------------------------------------------------------------------ */
/* Experiments                                                         */

/* Runs the full (seed x fraction x selector x classifier) grid described by
 * the config file and writes every report artifact into out_dir. */
gb_status gb_run_experiment(const char* config_path, const char* out_dir);

/* Re-renders text tables and SVG plots from the CSVs in a results dir. */
gb_status gb_render_report(const char* results_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GASBOOST_H */
