#ifndef TRISYM_H
#define TRISYM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TrisymStatus {
  TRISYM_STATUS_OK = 0,
  TRISYM_STATUS_NULL_POINTER = 1,
  TRISYM_STATUS_INVALID_UTF8 = 2,
  TRISYM_STATUS_INVALID_TYPE = 3,
  TRISYM_STATUS_INVALID_ARGUMENT = 4,
  TRISYM_STATUS_MARK_CONSTRAINT = 5,
  TRISYM_STATUS_UNKNOWN_SPACE = 6,
  TRISYM_STATUS_INTERNAL = 7,
  TRISYM_STATUS_PANIC = 8,
} TrisymStatus;

typedef struct TrisymCurvatureReport TrisymCurvatureReport;

typedef struct TrisymRootSystem TrisymRootSystem;

typedef struct TrisymSpace TrisymSpace;

// Optimizer settings for [`trisym_pinch`]. The metric is `-(num/den) B`.
typedef struct TrisymPinchConfig {
  size_t starts;
  uint64_t seed;
  size_t max_iter;
  int64_t scale_num;
  int64_t scale_den;
} TrisymPinchConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next call into the library from the same thread.
const char *trisym_last_error(void);

// # Safety
// `s` must be null or a string returned by this library.
void trisym_string_free(char *s);

// # Safety
// `ty` must be a nul-terminated string; `out` must be writable.
enum TrisymStatus trisym_root_system_new(const char *ty, struct TrisymRootSystem **out);

// # Safety
// `rs` must be null or a handle from [`trisym_root_system_new`].
void trisym_root_system_free(struct TrisymRootSystem *rs);

// # Safety
// `rs` must be a live handle; `out` must be writable.
enum TrisymStatus trisym_root_system_num_positive(const struct TrisymRootSystem *rs, size_t *out);

// # Safety
// `rs` must be a live handle; `out` must be writable.
enum TrisymStatus trisym_root_system_to_json(const struct TrisymRootSystem *rs, char **out);

// Builds a named space (`cp3-sp`, `s6`, `f6`, `cp2-su`, or `TYPE:KIND:i[:j]`).
//
// # Safety
// `name` must be a nul-terminated string; `out` must be writable.
enum TrisymStatus trisym_space_new(const char *name, struct TrisymSpace **out);

// # Safety
// `s` must be null or a handle from [`trisym_space_new`].
void trisym_space_free(struct TrisymSpace *s);

// # Safety
// `s` must be a live handle; `out` must be writable.
enum TrisymStatus trisym_space_dim_m(const struct TrisymSpace *s, size_t *out);

// # Safety
// `s` must be a live handle; `out` must be writable.
enum TrisymStatus trisym_space_to_json(const struct TrisymSpace *s, char **out);

// Defaults: 64 starts, seed 42, 5000 iterations, scale 1/2.
struct TrisymPinchConfig trisym_pinch_config_default(void);

// Full curvature report. `config` may be null for the defaults.
//
// # Safety
// `s` must be a live handle, `config` null or valid, `out` writable.
enum TrisymStatus trisym_pinch(const struct TrisymSpace *s,
                               const struct TrisymPinchConfig *config,
                               struct TrisymCurvatureReport **out);

// # Safety
// `r` must be null or a handle from [`trisym_pinch`].
void trisym_report_free(struct TrisymCurvatureReport *r);

// # Safety
// `r` must be a live handle; `out` must be writable.
enum TrisymStatus trisym_report_kmin(const struct TrisymCurvatureReport *r, double *out);

// # Safety
// `r` must be a live handle; `out` must be writable.
enum TrisymStatus trisym_report_kmax(const struct TrisymCurvatureReport *r, double *out);

// # Safety
// `r` must be a live handle; `out` must be writable.
enum TrisymStatus trisym_report_delta(const struct TrisymCurvatureReport *r, double *out);

// Number of optimizer starts that converged.
//
// # Safety
// `r` must be a live handle; `out` must be writable.
enum TrisymStatus trisym_report_converged_starts(const struct TrisymCurvatureReport *r,
                                                 size_t *out);

// # Safety
// `r` must be a live handle; `out` must be writable.
enum TrisymStatus trisym_report_to_json(const struct TrisymCurvatureReport *r, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRISYM_H */
