#ifndef LSILAB_H
#define LSILAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LSILAB_BUILDING)
#    define LSILAB_API __declspec(dllexport)
#  else
#    define LSILAB_API __declspec(dllimport)
#  endif
#else
#  define LSILAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns a status. On failure the message is available
 * from lsilab_last_error() on the calling thread until its next failing call. */
typedef enum lsilab_status {
  LSILAB_OK = 0,
  LSILAB_E_INVALID_ARGUMENT,
  LSILAB_E_DIMENSION_MISMATCH,
  LSILAB_E_OUT_OF_DOMAIN,
  LSILAB_E_INSUFFICIENT_COVERAGE,
  LSILAB_E_ZERO_MASS,
  LSILAB_E_DIVERGENT_INTEGRAL,
  LSILAB_E_DEGENERATE_SUPPORT,
  LSILAB_E_SINGULAR_COVARIANCE,
  LSILAB_E_UNSUPPORTED_DIMENSION,
  LSILAB_E_UNSUPPORTED_REPRESENTATION,
  LSILAB_E_NON_POSITIVE_INPUT,
  LSILAB_E_NON_POSITIVE_TRACE,
  LSILAB_E_NON_POSITIVE_SAMPLE,
  LSILAB_E_RANGE_VIOLATION,
  LSILAB_E_OUT_OF_RANGE,
  LSILAB_E_PARSE,
  LSILAB_E_IO,
  LSILAB_E_BUFFER_TOO_SMALL,
  LSILAB_E_INTERNAL
} lsilab_status;

LSILAB_API const char* lsilab_version(void);
LSILAB_API const char* lsilab_status_name(lsilab_status status);
LSILAB_API const char* lsilab_last_error(void);

/* Strings returned through char** out-parameters are owned by the caller. */
LSILAB_API void lsilab_string_free(char* s);

/* Opaque handles. All are immutable after creation and safe to share
 * between threads. */
typedef struct lsilab_density lsilab_density;
typedef struct lsilab_function lsilab_function;
typedef struct lsilab_corpus lsilab_corpus;

typedef enum lsilab_path {
  LSILAB_PATH_AUTO = 0,
  LSILAB_PATH_ANALYTIC = 1,
  LSILAB_PATH_QUADRATURE = 2
} lsilab_path;

typedef struct lsilab_options {
  int hermite_points; /* Gauss-Hermite nodes per axis */
  int box_points;     /* Simpson points per axis for box rules; 0 = default */
  lsilab_path path;
  int has_tol;        /* nonzero: `tol` replaces the default tolerance */
  double tol;
} lsilab_options;

LSILAB_API void lsilab_options_init(lsilab_options* opts);

#define LSILAB_NAME_CAP 64
#define LSILAB_INPUTS_CAP 256

typedef struct lsilab_report {
  char name[LSILAB_NAME_CAP];
  char inputs[LSILAB_INPUTS_CAP]; /* truncated if longer */
  double lhs;
  double rhs;
  double slack; /* rhs - lhs */
  double tol;
  double estimated_error;
  int satisfied;
} lsilab_report;

/* {"name":..,"lhs":..,"rhs":..,"slack":..,"satisfied":..,"tol":..,
 *  "estimated_error":..,"inputs":..} */
LSILAB_API lsilab_status lsilab_report_to_json(const lsilab_report* report, char** out);

/* ---- densities ---- */

LSILAB_API lsilab_status lsilab_density_from_json(const char* text, lsilab_density** out);
LSILAB_API lsilab_status lsilab_density_gaussian(const double* mean, const double* cov, int n,
                                                 lsilab_density** out);
LSILAB_API lsilab_status lsilab_density_to_json(const lsilab_density* d, char** out);
LSILAB_API lsilab_status lsilab_density_describe(const lsilab_density* d, char** out);
LSILAB_API int lsilab_density_dim(const lsilab_density* d);
LSILAB_API void lsilab_density_free(lsilab_density* d);

LSILAB_API lsilab_status lsilab_density_whiten(const lsilab_density* d, lsilab_density** out);
LSILAB_API lsilab_status lsilab_density_scale(const lsilab_density* d, double alpha,
                                              lsilab_density** out);

/* ---- functionals ---- */

LSILAB_API lsilab_status lsilab_shannon_entropy(const lsilab_density* d, const lsilab_options* opts,
                                                double* value, double* error);
LSILAB_API lsilab_status lsilab_entropy_power(const lsilab_density* d, const lsilab_options* opts,
                                              double* value, double* error);
LSILAB_API lsilab_status lsilab_fisher_information(const lsilab_density* d,
                                                   const lsilab_options* opts, double* value,
                                                   double* error);
/* n*n row-major outputs */
LSILAB_API lsilab_status lsilab_fisher_matrix(const lsilab_density* d, const lsilab_options* opts,
                                              double* out, double* error);
LSILAB_API lsilab_status lsilab_covariance(const lsilab_density* d, double* out);
LSILAB_API lsilab_status lsilab_mean(const lsilab_density* d, double* out);

/* ---- positive functions against the standard Gaussian ---- */

/* exp(slope . x + offset) */
LSILAB_API lsilab_status lsilab_function_exp(const double* slope, int n, double offset,
                                             lsilab_function** out);
/* one, exp, tanh, quad, sq, sin, sin2 */
LSILAB_API lsilab_status lsilab_function_named(const char* name, int n, lsilab_function** out);
/* h (2 pi)^{n/2} e^{|x|^2/2} for an analytic density h */
LSILAB_API lsilab_status lsilab_function_from_density(const lsilab_density* h,
                                                      lsilab_function** out);
/* Phi((x_1 - shift) / eps) */
LSILAB_API lsilab_status lsilab_function_halfspace(int n, double shift, double eps,
                                                   lsilab_function** out);
/* Phi((u . x - b) / s) or the logistic sigmoid of the same argument */
LSILAB_API lsilab_status lsilab_function_ridge(const double* direction, int n, double offset,
                                               double scale, int logistic,
                                               lsilab_function** out);
/* Probit ridge along the leading principal axis of an analytic density */
LSILAB_API lsilab_status lsilab_function_bobkov_witness(const lsilab_density* g,
                                                        lsilab_function** out);
LSILAB_API int lsilab_function_dim(const lsilab_function* f);
LSILAB_API lsilab_status lsilab_function_name(const lsilab_function* f, char** out);
LSILAB_API lsilab_status lsilab_function_value(const lsilab_function* f, const double* x,
                                               double* value);
LSILAB_API void lsilab_function_free(lsilab_function* f);

typedef struct lsilab_moments {
  double mass;
  double entropy;
  double fisher;
  double estimated_error;
} lsilab_moments;

/* mean_gradient receives n values and may be NULL */
LSILAB_API lsilab_status lsilab_function_moments(const lsilab_function* f,
                                                 const lsilab_options* opts,
                                                 lsilab_moments* out, double* mean_gradient);

/* ---- checkers ---- */

/* Density checkers by name:
 *   euclidean_lsi, nj, njj, entropy_trace, reversed_euclidean, max_entropy_det,
 *   amgm_spectrum, intermediate_bound, derived_reversed_euclidean,
 *   lsi, reversed_lsi (on the change-of-function transform of the density),
 *   bobkov (on the density's principal-axis probit witness) */
LSILAB_API lsilab_status lsilab_check_density(const char* name, const lsilab_density* d,
                                              const lsilab_options* opts, lsilab_report* out);
/* Function checkers by name: lsi, reversed_lsi, bobkov */
LSILAB_API lsilab_status lsilab_check_function(const char* name, const lsilab_function* f,
                                               const lsilab_options* opts, lsilab_report* out);
LSILAB_API lsilab_status lsilab_check_amgm(const double* values, size_t count,
                                           const lsilab_options* opts, lsilab_report* out);

/* Names accepted by lsilab_check_density, NULL-terminated. */
LSILAB_API const char* const* lsilab_density_checker_names(void);

typedef struct lsilab_equivalence {
  lsilab_report reversed_lsi;
  lsilab_report reversed_euclidean;
  lsilab_report entropy_trace;
  lsilab_report max_entropy_det;
  lsilab_report whitened_trace;
  double transport_gap;
  int transport_consistent;
  int verdicts_consistent;
  int ok;
} lsilab_equivalence;

LSILAB_API lsilab_status lsilab_equivalence_roundtrip(const lsilab_density* d,
                                                      const lsilab_options* opts,
                                                      lsilab_equivalence* out);

/* alpha* = sqrt(trace / n) and the bound it attains */
LSILAB_API lsilab_status lsilab_optimal_alpha(double trace_cov, int n, double* alpha,
                                              double* bound);
LSILAB_API lsilab_status lsilab_scaled_bound(double trace_cov, int n, double alpha,
                                             double* bound);

/* ---- heat semigroup ---- */

typedef struct lsilab_semigroup_summary {
  double t;
  double identity_lhs;
  double production_integral;
  double reversed_bound;
  double forward_bound;
  double functional_entropy; /* filled only when t == 1 and x == 0 */
  double tolerance;
  int identity_ok;
  int sandwich_ok;
} lsilab_semigroup_summary;

typedef struct lsilab_semigroup_row {
  double s;
  double integrand;
  double reversed_integrand;
  double forward_integrand;
} lsilab_semigroup_row;

/* Two-call pattern: pass rows == NULL to learn the row count through
 * row_count, then call again with capacity >= row_count. */
LSILAB_API lsilab_status lsilab_semigroup_run(const lsilab_function* f, double t, const double* x,
                                              int slices, int points,
                                              lsilab_semigroup_summary* summary,
                                              lsilab_semigroup_row* rows, size_t capacity,
                                              size_t* row_count);

/* ---- discrete cube ---- */

LSILAB_API lsilab_status lsilab_two_point_constant(double p, double* constant);
LSILAB_API lsilab_status lsilab_scan_constant(double p, int grid_size, double* constant,
                                              double* argmin_ratio);
/* delta_sq / (Ent * E) */
LSILAB_API lsilab_status lsilab_two_point_ratio(double fp, double fm, double p, double* ratio);
LSILAB_API lsilab_status lsilab_check_two_point(double fp, double fm, double p,
                                                const lsilab_options* opts, lsilab_report* out);
/* table has 2^n entries, bit i of the index set <=> x_i = +1; p has n entries */
LSILAB_API lsilab_status lsilab_tensorization_check(const double* table, const double* p, int n,
                                                    const lsilab_options* opts,
                                                    lsilab_report* out);

typedef struct lsilab_clt_row {
  int n;
  double discrete_ent;
  double discrete_grad_sq;
  double gaussian_ent;
  double gaussian_grad_sq;
  double deficit_gap;
} lsilab_clt_row;

/* rows receives `count` entries; f must be one-dimensional */
LSILAB_API lsilab_status lsilab_clt(const lsilab_function* f, const int* n_list, size_t count,
                                    lsilab_clt_row* rows);

/* ---- isoperimetry ---- */

LSILAB_API double lsilab_gaussian_cdf(double x);
LSILAB_API lsilab_status lsilab_gaussian_quantile(double t, double* x);
LSILAB_API lsilab_status lsilab_isoperimetric(double t, double* value);

/* ---- corpora ---- */

typedef enum lsilab_family { LSILAB_FAMILY_GAUSSIAN = 0, LSILAB_FAMILY_MIXTURE = 1 } lsilab_family;

typedef struct lsilab_corpus_spec {
  uint64_t seed;
  int count;
  int dimension; /* 1, 2, or 0 for a per-item draw from {1, 2} */
  lsilab_family family;
  int max_components;
} lsilab_corpus_spec;

LSILAB_API void lsilab_corpus_spec_init(lsilab_corpus_spec* spec);
LSILAB_API lsilab_status lsilab_corpus_generate(const lsilab_corpus_spec* spec,
                                                lsilab_corpus** out);
LSILAB_API lsilab_status lsilab_corpus_load(const char* path, lsilab_corpus** out);
LSILAB_API lsilab_status lsilab_corpus_save(const lsilab_corpus* c, const char* path);
/* JSON header object {"seed":..,"spec":{..}}; "null" for corpora loaded
 * without one. */
LSILAB_API lsilab_status lsilab_corpus_header(const lsilab_corpus* c, char** out);
LSILAB_API size_t lsilab_corpus_size(const lsilab_corpus* c);
/* Returns a new handle the caller must free. */
LSILAB_API lsilab_status lsilab_corpus_get(const lsilab_corpus* c, size_t index,
                                           lsilab_density** out);
LSILAB_API void lsilab_corpus_free(lsilab_corpus* c);

#ifdef __cplusplus
}
#endif

#endif /* LSILAB_H */
