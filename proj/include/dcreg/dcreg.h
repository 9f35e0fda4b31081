#ifndef DCREG_DCREG_H
#define DCREG_DCREG_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define DCREG_API __attribute__((visibility("default")))
#else
#define DCREG_API
#endif

/* Status codes. Nonzero values other than DCREG_INTERNAL match the C++
 * dcreg::ErrorCode values one to one. */
typedef enum dcreg_status {
  DCREG_OK = 0,
  DCREG_INVALID_ARGUMENT = 1,
  DCREG_INVALID_VALUE,
  DCREG_INVALID_GRID,
  DCREG_INCOMPATIBLE_GRID,
  DCREG_IMPROPER_FUNCTION,
  DCREG_DIMENSION_MISMATCH,
  DCREG_INFINITE_VALUE_IN_SUP,
  DCREG_SCALE_ORDER,
  DCREG_UNSUPPORTED_KERNEL,
  DCREG_VERIFICATION_FAILURE,
  DCREG_PRECONDITION_VIOLATED,
  DCREG_EMPTY_SET,
  DCREG_SLOPE_RANGE_TOO_NARROW,
  DCREG_SYNTAX_ERROR,
  DCREG_UNKNOWN_IDENTIFIER,
  DCREG_ARITY_MISMATCH,
  DCREG_EVALUATION_ERROR,
  DCREG_CONFIG_ERROR,
  DCREG_IO_ERROR,
  DCREG_INTERNAL = 100
} dcreg_status;

/* A sampled function on a 1D or 2D uniform grid. Values are doubles with
 * +HUGE_VAL standing for +inf. */
typedef struct dcreg_function dcreg_function;
typedef struct dcreg_kernel dcreg_kernel;

DCREG_API const char* dcreg_version(void);
DCREG_API const char* dcreg_status_name(dcreg_status status);
/* Message of the last failure on the calling thread ("" if none). */
DCREG_API const char* dcreg_last_error(void);

/* domain: "lo:hi:nodes" or "lo:hi:nodes,lo:hi:nodes". */
DCREG_API dcreg_status dcreg_function_from_expression(const char* expression, const char* domain,
                                                      dcreg_function** out);
DCREG_API dcreg_status dcreg_function_from_values(const char* domain, const double* values, size_t count,
                                                  dcreg_function** out);
/* path "-" reads stdin / writes stdout. */
DCREG_API dcreg_status dcreg_function_read_csv(const char* path, dcreg_function** out);
DCREG_API dcreg_status dcreg_function_write_csv(const dcreg_function* f, const char* path);
DCREG_API size_t dcreg_function_size(const dcreg_function* f);
DCREG_API int dcreg_function_dim(const dcreg_function* f);
/* Copies size() values; fails with DCREG_INVALID_ARGUMENT if count differs. */
DCREG_API dcreg_status dcreg_function_values(const dcreg_function* f, double* out, size_t count);
DCREG_API void dcreg_function_free(dcreg_function* f);

/* kind: "kp" or "hilbert". norm_p in [1, inf] (HUGE_VAL for l_inf);
 * exponent_p > 1 (ignored for hilbert). */
DCREG_API dcreg_status dcreg_kernel_create(const char* kind, double norm_p, double exponent_p, int dim,
                                           dcreg_kernel** out);
DCREG_API void dcreg_kernel_free(dcreg_kernel* k);

DCREG_API dcreg_status dcreg_inf_convolve(const dcreg_function* f, const dcreg_kernel* k, double n,
                                          dcreg_function** out);
/* Separable parabola transform; quadratic kernels only. */
DCREG_API dcreg_status dcreg_inf_convolve_fast(const dcreg_function* f, const dcreg_kernel* k, double n,
                                               dcreg_function** out);
DCREG_API dcreg_status dcreg_sup_convolve(const dcreg_function* f, const dcreg_kernel* k, double n,
                                          dcreg_function** out);
/* S_m(I_n f); requires m > n. */
DCREG_API dcreg_status dcreg_lasry_lions(const dcreg_function* f, const dcreg_kernel* k, double n, double m,
                                         dcreg_function** out);
DCREG_API dcreg_status dcreg_convex_envelope(const dcreg_function* f, dcreg_function** out);
/* value = plus - minus. plus and minus may be NULL. */
DCREG_API dcreg_status dcreg_delta_regularize(const dcreg_function* f, const dcreg_kernel* k, double n,
                                              dcreg_function** value, dcreg_function** plus,
                                              dcreg_function** minus);

typedef struct dcreg_kernel_report {
  double separation_constant; /* min K(x,y) / |x-y|^p on sampled pairs */
  double quadratic_defect;    /* max |K - |x-y|_2^2| / (1 + |x|^2 + |y|^2) */
  double growth_eta;
  double growth_gamma;
  double growth_worst_ratio;
  int is_quadratic;
} dcreg_kernel_report;

DCREG_API dcreg_status dcreg_kernel_check(const dcreg_kernel* k, size_t samples, uint64_t seed,
                                          dcreg_kernel_report* out);

/* Runs a JSON config. output_dir overrides outputs.directory when non-NULL.
 * *passed is 1 when every enabled check passes. */
DCREG_API dcreg_status dcreg_run_config(const char* config_path, const char* output_dir, int* passed);
/* Recomputes the report of a run directory from its CSVs. report_path may be
 * NULL (default <dir>/report.json) or "" (no report written). */
DCREG_API dcreg_status dcreg_diagnose(const char* run_dir, const char* report_path, int* passed);

#ifdef __cplusplus
}
#endif

#endif
