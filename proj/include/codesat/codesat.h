/*
 * codesat — LLM-driven initial coding, codebook reduction and saturation
 * metrics for thematic analysis, exposed as a C shared-library API.
 *
 * All functions return a codesat_status. Anything other than CODESAT_OK
 * leaves a human-readable message retrievable with codesat_ctx_error().
 * Status values double as process exit codes for the bundled CLI.
 */
#ifndef CODESAT_H
#define CODESAT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CODESAT_API __declspec(dllexport)
#else
#define CODESAT_API __attribute__((visibility("default")))
#endif

typedef enum codesat_status {
  CODESAT_OK = 0,
  CODESAT_ERR_INTERNAL = 1, /* unexpected failure */
  CODESAT_ERR_CONFIG = 2,   /* configuration, input or I/O problem */
  CODESAT_ERR_PROVIDER = 3, /* transport, authentication or provider content */
  CODESAT_ERR_JUDGE = 4     /* duplicate-judge contract violation */
} codesat_status;

/* Opaque pipeline context: configuration plus the last error message. */
typedef struct codesat_ctx codesat_ctx;

CODESAT_API const char* codesat_version(void);

CODESAT_API codesat_status codesat_ctx_new(codesat_ctx** out_ctx);
CODESAT_API void codesat_ctx_free(codesat_ctx* ctx);

/* Last error message for this context; empty string when none. The pointer
 * stays valid until the next call on the same context. */
CODESAT_API const char* codesat_ctx_error(const codesat_ctx* ctx);

/* Loads a JSON run configuration (with ${ENV} interpolation). */
CODESAT_API codesat_status codesat_ctx_load_config(codesat_ctx* ctx, const char* path);

/* Applies a single override, e.g. ("judge", "zero-shot"), ("seed", "42"),
 * ("output_dir", "out"), ("provider", "fixture"). */
CODESAT_API codesat_status codesat_ctx_set_option(codesat_ctx* ctx, const char* key,
                                                  const char* value);

/* Pipeline verbs. Each writes its artifacts to disk and, when out_summary
 * is non-NULL, returns a JSON summary the caller frees with
 * codesat_string_free(). */
CODESAT_API codesat_status codesat_cmd_code(codesat_ctx* ctx, int force, char** out_summary);
CODESAT_API codesat_status codesat_cmd_reduce(codesat_ctx* ctx, const char* run_dir, int force,
                                              char** out_summary);
CODESAT_API codesat_status codesat_cmd_report(codesat_ctx* ctx, const char* out_dir,
                                              char** out_summary);
CODESAT_API codesat_status codesat_cmd_compile_judge(codesat_ctx* ctx, const char* bank_path,
                                                     int64_t seed, const char* out_path,
                                                     char** out_summary);
CODESAT_API codesat_status codesat_cmd_eval_similarity(codesat_ctx* ctx, const char* left_csv,
                                                       const char* right_csv,
                                                       const char* out_prefix,
                                                       char** out_summary);

/* Built-in analysis sequences for an n-interview corpus as JSON. */
CODESAT_API codesat_status codesat_sequences_json(codesat_ctx* ctx, size_t n, char** out_json);

CODESAT_API void codesat_string_free(char* s);

/* Saturation arithmetic. These need no context; a NULL ctx is accepted and
 * detail is then limited to the status code. */
CODESAT_API codesat_status codesat_its_ratio(codesat_ctx* ctx, uint64_t unique_count,
                                             uint64_t total_count, double* out_ratio);
CODESAT_API codesat_status codesat_cov_percent(codesat_ctx* ctx, const double* values,
                                               size_t count, double* out_cov);
CODESAT_API codesat_status codesat_linear_fit(codesat_ctx* ctx, const double* xs,
                                              const double* ys, size_t count, double* out_slope,
                                              double* out_intercept);
CODESAT_API codesat_status codesat_mse_between_fits(codesat_ctx* ctx, double slope_a,
                                                    double intercept_a, double slope_b,
                                                    double intercept_b, int n_points,
                                                    double* out_mse);

/* ITS of the final row of a reducer counts CSV. */
CODESAT_API codesat_status codesat_its_from_counts_csv(codesat_ctx* ctx, const char* counts_csv,
                                                       double* out_ratio, uint64_t* out_unique,
                                                       uint64_t* out_total);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CODESAT_H */
