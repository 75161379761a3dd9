#ifndef LEVYMULT_LEVYMULT_H
#define LEVYMULT_LEVYMULT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#if defined(LEVYMULT_BUILDING_LIBRARY)
#define LM_API __declspec(dllexport)
#else
#define LM_API __declspec(dllimport)
#endif
#else
#define LM_API __attribute__((visibility("default")))
#endif

typedef enum lm_status {
  LM_OK = 0,
  LM_ERR_ATOM_AT_ORIGIN,
  LM_ERR_NON_INTEGRABLE_MEASURE,
  LM_ERR_SHAPE_MISMATCH,
  LM_ERR_MODULATOR_EXCEEDS_ONE,
  LM_ERR_MODULATOR_UNDEFINED_ON_SUPPORT,
  LM_ERR_QUADRATURE_NOT_CONVERGED,
  LM_ERR_EPS_TOO_LARGE,
  LM_ERR_REQUIRES_FINITE_MEASURE,
  LM_ERR_REQUIRES_EQUAL_MATRICES,
  LM_ERR_DEGENERATE_DENOMINATOR,
  LM_ERR_K_NORM_EXCEEDS_ONE,
  LM_ERR_ZERO_FREQUENCY_VECTOR,
  LM_ERR_ALPHA_OUT_OF_RANGE,
  LM_ERR_ZERO_COORDINATE,
  LM_ERR_GRID_MISMATCH,
  LM_ERR_SYMBOL_BOUND_VIOLATED,
  LM_ERR_PLANCHEREL_MISMATCH,
  LM_ERR_TRACE_MISMATCH,
  LM_ERR_STEP_TOO_COARSE,
  LM_ERR_UNSUPPORTED,
  LM_ERR_INVALID_ARGUMENT,
  LM_ERR_PARSE,
  LM_ERR_VALIDATION,
  LM_ERR_IO,
  LM_ERR_NULL_POINTER,
  LM_ERR_INTERNAL
} lm_status;

typedef struct lm_config lm_config;
typedef struct lm_symbol lm_symbol;
typedef struct lm_grid lm_grid;
typedef struct lm_field lm_field;

LM_API const char* lm_version(void);
LM_API const char* lm_status_name(lm_status status);
/* Message of the last failed call on this thread; empty after a success. */
LM_API const char* lm_last_error(void);
LM_API void lm_string_free(char* s);

/* Run configuration (JSON text). */
LM_API lm_status lm_config_parse(const char* text, lm_config** out);
LM_API lm_status lm_config_load(const char* path, lm_config** out);
LM_API void lm_config_free(lm_config* cfg);
LM_API lm_status lm_config_emit(const lm_config* cfg, char** out);
LM_API lm_status lm_config_set_seed(lm_config* cfg, uint64_t seed);
LM_API lm_status lm_config_set_paths(lm_config* cfg, uint64_t paths);
LM_API lm_status lm_config_set_out(lm_config* cfg, const char* dir);

/* Runs symbol, apply, pair, probe, mc, gaussian-mc or selftest. *passed is 1 on
   PASS; *report receives the full text report (free with lm_string_free). A
   FAIL verdict is not an error: the call still returns LM_OK. */
LM_API lm_status lm_run_command(const char* command, const lm_config* cfg, int* passed, char** report);

/* Symbol described by the config. */
LM_API lm_status lm_symbol_create(const lm_config* cfg, lm_symbol** out);
LM_API void lm_symbol_free(lm_symbol* m);
LM_API int lm_symbol_dimension(const lm_symbol* m);
LM_API lm_status lm_symbol_eval(const lm_symbol* m, const double* xi, double* re, double* im);

/* Symbol tabulated on the config grid, natural frequency order. */
LM_API lm_status lm_grid_create(const lm_symbol* m, const lm_config* cfg, lm_grid** out);
LM_API void lm_grid_free(lm_grid* g);
LM_API int lm_grid_dimension(const lm_grid* g);
LM_API size_t lm_grid_size(const lm_grid* g);
LM_API double lm_grid_max_abs(const lm_grid* g);
/* Copies 2 * size doubles (re, im interleaved). */
LM_API lm_status lm_grid_values(const lm_grid* g, double* out);
LM_API lm_status lm_grid_write(const lm_grid* g, const char* path);
LM_API lm_status lm_grid_read(const char* path, lm_grid** out);

/* Spatial samples. which = 0 selects f, 1 selects g. */
LM_API lm_status lm_field_from_config(const lm_config* cfg, int which, lm_field** out);
LM_API lm_status lm_field_apply(const lm_grid* m, const lm_field* f, lm_field** out);
LM_API void lm_field_free(lm_field* f);
LM_API size_t lm_field_size(const lm_field* f);
LM_API lm_status lm_field_values(const lm_field* f, double* out);
LM_API lm_status lm_field_write(const lm_field* f, const char* path);
LM_API lm_status lm_field_read(const char* path, lm_field** out);

#ifdef __cplusplus
}
#endif

#endif
