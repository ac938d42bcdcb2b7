/*
 * mslearn - regularized metric and similarity learning with matrix-norm
 * regularizers, Rademacher complexity estimation over i.i.d. sample blocks,
 * and generalization-bound assembly and verification.
 *
 * C API over the C++ core. All objects are opaque handles; every fallible
 * function returns an msl_status and leaves a human-readable message in
 * msl_last_error() on failure. Strings returned through char** out
 * parameters are heap-allocated and must be released with msl_string_free().
 */
#ifndef MSLEARN_H
#define MSLEARN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MSL_API __declspec(dllexport)
#else
#define MSL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum msl_status {
  MSL_OK = 0,
  MSL_ERR_INVALID_ARGUMENT = 1,
  MSL_ERR_IO = 2,
  MSL_ERR_PARSE = 3,
  MSL_ERR_INTERNAL = 4
} msl_status;

typedef enum msl_task {
  MSL_TASK_METRIC = 0,
  MSL_TASK_SIMILARITY = 1
} msl_task;

/* Regularizer family; duals are fro / linf / l2inf / spectral in order. */
typedef enum msl_norm {
  MSL_NORM_FROBENIUS = 0,
  MSL_NORM_ENTRYWISE_L1 = 1,
  MSL_NORM_MIXED21 = 2,
  MSL_NORM_TRACE = 3
} msl_norm;

typedef struct msl_dataset msl_dataset;
typedef struct msl_model msl_model;

typedef struct msl_solver_config {
  uint32_t max_iters;
  double step_scale; /* step at iteration t is step_scale / sqrt(t) */
  double tolerance;
  int project; /* nonzero: keep iterates inside ||M|| <= 1/sqrt(lambda) */
  uint64_t seed;
} msl_solver_config;

typedef struct msl_fit_stats {
  double final_objective;
  uint32_t iterations_run;
} msl_fit_stats;

typedef struct msl_rademacher_result {
  double value;
  double std_error; /* 0 for exact enumeration */
  uint64_t draws;   /* 0 for exact enumeration */
  uint64_t block_count;
} msl_rademacher_result;

typedef struct msl_check_result {
  int passed;
  double lhs;
  double rhs;
  double slack; /* rhs - lhs */
  char detail[240];
} msl_check_result;

MSL_API const char* msl_status_message(msl_status status);
MSL_API const char* msl_last_error(void);
MSL_API void msl_string_free(char* s);
MSL_API void msl_solver_config_default(msl_solver_config* out);

/* ----- enum names ----- */

MSL_API msl_status msl_task_parse(const char* name, msl_task* out);
MSL_API msl_status msl_norm_parse(const char* name, msl_norm* out);      /* fro|l1|l21|trace */
MSL_API msl_status msl_norm_parse_dual(const char* name, msl_norm* out); /* fro|linf|l2inf|spectral */
MSL_API const char* msl_task_name(msl_task task);
MSL_API const char* msl_norm_name(msl_norm norm);
MSL_API const char* msl_norm_dual_name(msl_norm norm);

/* ----- datasets ----- */

/* points is row-major n x d; labels has n entries. */
MSL_API msl_status msl_dataset_create(const double* points, const int64_t* labels,
                                      size_t n, size_t d, msl_dataset** out);
/* CSV with header x1,...,xd,label; row order is significant. */
MSL_API msl_status msl_dataset_load_csv(const char* path, msl_dataset** out);
MSL_API msl_status msl_dataset_save_csv(const msl_dataset* data, const char* path);
/* Two balanced label clusters in [0,1]^d, deterministic per seed. */
MSL_API msl_status msl_dataset_generate(size_t d, size_t n, double separation,
                                        uint64_t seed, msl_dataset** out);
MSL_API size_t msl_dataset_size(const msl_dataset* data);
MSL_API size_t msl_dataset_dim(const msl_dataset* data);
MSL_API void msl_dataset_free(msl_dataset* data);

/* ----- models ----- */

/* Minimizes empirical_risk + lambda ||M||^2 by projected subgradient
 * descent. config may be NULL for defaults. stats may be NULL. */
MSL_API msl_status msl_fit(const msl_dataset* data, msl_task task, msl_norm norm,
                           double lambda, const msl_solver_config* config,
                           msl_model** out, msl_fit_stats* stats);
/* JSON object { "d", "b", "M" (row-major d*d), "task", "norm", "lambda" }. */
MSL_API msl_status msl_model_load_json(const char* path, msl_model** out);
MSL_API msl_status msl_model_save_json(const msl_model* model, const char* path);
MSL_API size_t msl_model_dim(const msl_model* model);
MSL_API double msl_model_offset(const msl_model* model);
MSL_API msl_task msl_model_task(const msl_model* model);
MSL_API msl_norm msl_model_norm(const msl_model* model);
MSL_API double msl_model_lambda(const msl_model* model);
/* Copies the d*d matrix row-major into out. */
MSL_API msl_status msl_model_matrix(const msl_model* model, double* out);
MSL_API void msl_model_free(msl_model* model);

/* ----- risks ----- */

/* U-statistic empirical risk of the model (its stored task) on data. */
MSL_API msl_status msl_empirical_risk(const msl_model* model,
                                      const msl_dataset* data, double* out);
/* Average pair loss over the floor(n/2) blocks (i, m+i). */
MSL_API msl_status msl_block_risk(const msl_model* model,
                                  const msl_dataset* data, double* out);

/* ----- Rademacher complexity ----- */

/* Builds the sample blocks for `task` and estimates
 * (1/m) E_sigma || sum_i sigma_i B_i ||_dual for the dual of `norm`.
 * exact != 0 enumerates all 2^m sign vectors (m <= 20). */
MSL_API msl_status msl_rademacher(const msl_dataset* data, msl_task task,
                                  msl_norm norm, uint64_t draws, uint64_t seed,
                                  int exact, msl_rademacher_result* out);
/* Analytic supremum of the block dual norm over [0,1]^d. */
MSL_API msl_status msl_x_star_unit_box(msl_task task, msl_norm norm, size_t d,
                                       double* out);
/* Max block dual norm over all sample pairs. */
MSL_API msl_status msl_x_star_empirical(msl_task task, msl_norm norm,
                                        const msl_dataset* data, double* out);
/* Closed-form complexity bound from the domain suprema of the vector norms. */
MSL_API msl_status msl_rademacher_closed_form(msl_norm norm, msl_task task,
                                              double sup_inf, double sup_fro,
                                              uint64_t n, size_t d, double* out);

/* ----- generalization bounds ----- */

/* Flat JSON report with the three bound terms and every input. rn/xstar may
 * be NULL, in which case the closed-form complexity and the analytic unit-box
 * supremum for dimension d are used. */
MSL_API msl_status msl_bound_report_json(msl_task task, msl_norm norm, uint64_t n,
                                         size_t d, double lambda, double delta,
                                         const double* rn, const double* xstar,
                                         char** out_json);

/* ----- executable checks ----- */

MSL_API msl_status msl_check_khinchin(const double* f, size_t len, double p,
                                      double q, msl_check_result* out);
/* values is a symmetric n x n row-major table; n must be 4 or 6. */
MSL_API msl_status msl_check_ustat(const double* values, size_t n,
                                   msl_check_result* out);
MSL_API msl_status msl_check_ustat_random(size_t n, uint64_t seed,
                                          msl_check_result* out);
MSL_API msl_status msl_check_margin(const msl_model* model,
                                    const msl_dataset* data, double tol,
                                    msl_check_result* out);

/* ----- experiments ----- */

/* config_json mirrors the experiment configuration (see README). On success
 * *report_json holds the full report; *violations (may be NULL) the number
 * of repeats whose measured gap exceeded the assembled bound. */
MSL_API msl_status msl_experiment_run_json(const char* config_json,
                                           char** report_json,
                                           uint64_t* violations);
/* Scaling study over config_json's "dims" and "kinds"; returns CSV. */
MSL_API msl_status msl_scaling_run_csv(const char* config_json, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* MSLEARN_H */
