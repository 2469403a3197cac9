/*
 * fdbayes: nonparametric functional Bayes classifiers.
 *
 * Curves observed on a common grid are projected onto pooled-covariance
 * eigenfunctions and classified by products of per-component density
 * ratios (kernel density or kernel regression estimates), a Gaussian
 * quadratic-discriminant specialization, and comparator classifiers.
 *
 * All functions return FDB_OK or an error code; fdb_last_error() holds a
 * one-line message for the calling thread's most recent failure. Objects
 * are opaque handles released with the matching _free function. Handles
 * are immutable after creation and safe to share across threads.
 */

#ifndef FDBAYES_H
#define FDBAYES_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fdb_status {
  FDB_OK = 0,
  FDB_ERROR_INVALID_ARGUMENT = 1,
  FDB_ERROR_PARSE = 2,
  FDB_ERROR_DIMENSION = 3,
  FDB_ERROR_NUMERIC = 4,
  FDB_ERROR_IO = 5,
  FDB_ERROR_INTERNAL = 6
} fdb_status;

typedef struct fdb_curveset fdb_curveset;
typedef struct fdb_model fdb_model;

const char* fdb_version(void);

/* Message for the calling thread's last failing call; never NULL. */
const char* fdb_last_error(void);

/* Frees strings returned through char** out-parameters. */
void fdb_string_free(char* s);

/* ---- curve sets ------------------------------------------------------- */

/* values is n x m row-major; labels holds 0, 1, or -1 (unknown), or NULL
 * for all-unknown. */
fdb_status fdb_curveset_create(const double* times, int32_t m, const double* values, const int32_t* labels,
                               int32_t n, fdb_curveset** out);

/* Curve CSV: header line of grid times, then one "label,v1,...,vm" line
 * per curve with label 0, 1 or ?. */
fdb_status fdb_curveset_read_csv(const char* path, fdb_curveset** out);
fdb_status fdb_curveset_write_csv(const fdb_curveset* cs, const char* path);

int32_t fdb_curveset_n(const fdb_curveset* cs);
int32_t fdb_curveset_m(const fdb_curveset* cs);

/* Local-linear pre-smoothing of every curve back onto its grid, with a
 * per-curve leave-one-out bandwidth. */
fdb_status fdb_curveset_presmooth(const fdb_curveset* cs, fdb_curveset** out);

void fdb_curveset_free(fdb_curveset* cs);

/* ---- simulation ------------------------------------------------------- */

/* scenario_json fields: components, lambda0, lambda1 (arrays or
 * "exp(-j/D)"), mean1 ("zero"|"linear"), score_law ("gaussian"|
 * "centered_exponential"|"laplace_vs_gaussian"), noise_sd, grid_points,
 * n_train, n_test, seed. Returns the train/test pair. */
fdb_status fdb_simulate_json(const char* scenario_json, fdb_curveset** train, fdb_curveset** test);

/* ---- training, prediction, diagnostics -------------------------------- */

/* options_json: {"method": "npd"|"npr"|"gaussian"|"centroid"|"logistic",
 *                "folds": 10, "seed": 0,
 *                "J_candidates": [...], "h_candidates": [...]}
 * Only "method" is required. (J, h) are tuned by stratified k-fold
 * cross-validation minimizing misclassification, refitting the eigenbasis
 * inside each fold's training part. */
fdb_status fdb_train(const fdb_curveset* train, const char* options_json, fdb_model** out);

/* Selected parameters and per-candidate fold errors of the training run.
 * summary: {"method", "J", "h", "cv_error", "tuned"}. The CV table is CSV
 * with columns J,h,fold,error. Only available on freshly trained handles. */
fdb_status fdb_model_summary_json(const fdb_model* mdl, char** json_out);
fdb_status fdb_model_cv_table_csv(const fdb_model* mdl, char** csv_out);

fdb_status fdb_model_save(const fdb_model* mdl, const char* path);
fdb_status fdb_model_load(const char* path, fdb_model** out);

/* criteria and labels are caller-allocated arrays of length
 * fdb_curveset_n(cs); label 1 iff criterion >= 0. */
fdb_status fdb_model_predict(const fdb_model* mdl, const fdb_curveset* cs, double* criteria, int32_t* labels);

/* Per-component separation diagnostics of the fitted eigenbasis, CSV with
 * columns j,m_j,r_j,cum_m2,cum_r1sq. max_components <= 0 means all. */
fdb_status fdb_model_diagnostics_csv(const fdb_model* mdl, int32_t max_components, char** csv_out);

void fdb_model_free(fdb_model* mdl);

/* ---- published-table reproduction ------------------------------------- */

/* config_json: {"table": 1|2, "rows": "n=100,mu=diff,lambda=diff,
 * presmooth=no;...", "methods": ["gaussian",...], "repeats": 100,
 * "seed": 0, "threads": 0, "tolerance_pp": 2.0}. Returns a CSV report
 * with one line per (row, method): mean and standard error of the
 * misclassification percentage over the replicates, the published value,
 * and a pass flag. Deterministic given seed; thread count does not change
 * the result. */
fdb_status fdb_reproduce_csv(const char* config_json, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* FDBAYES_H */
