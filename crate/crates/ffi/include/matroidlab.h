#ifndef MATROIDLAB_H
#define MATROIDLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every entry point.
typedef enum MlStatus {
  ML_STATUS_OK = 0,
  ML_STATUS_NULL_POINTER = 1,
  ML_STATUS_INVALID_UTF8 = 2,
  ML_STATUS_PARSE = 3,
  ML_STATUS_BAD_PARAMS = 4,
  ML_STATUS_UNKNOWN_LABEL = 5,
  ML_STATUS_NOT_STANDARD = 6,
  ML_STATUS_NOT_REGULAR = 7,
  ML_STATUS_NOT_ARTINIAN = 8,
  ML_STATUS_OVERBUDGET = 9,
  ML_STATUS_UNKNOWN_NAME = 10,
  ML_STATUS_IO = 11,
  ML_STATUS_PANIC = 12,
  ML_STATUS_OTHER = 13,
} MlStatus;

// A matroid together with the ordering it was generated with, if any.
typedef struct MlMatroid MlMatroid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until
// the next call into the library on this thread.
const char *ml_last_error(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library, freed once.
void ml_string_free(char *s);

// Releases a matroid handle. Null is ignored.
//
// # Safety
// `m` must be null or a handle returned by this library, freed once.
void ml_matroid_free(struct MlMatroid *m);

// Parses a matroid from JSON, matrix text or an edge list.
//
// # Safety
// `text` must be a NUL-terminated string and `out` valid for writing.
enum MlStatus ml_matroid_parse(const char *text, struct MlMatroid **out);

// A named fixture: R10, DualK33, K33 or K4.
//
// # Safety
// `name` must be a NUL-terminated string and `out` valid for writing.
enum MlStatus ml_matroid_named(const char *name, struct MlMatroid **out);

// Theta (`chain == 0`) or phi (`chain != 0`) matroid for component sizes
// `sizes[0..len]`, carrying its labelling.
//
// # Safety
// `sizes` must point to `len` readable values and `out` be valid for writing.
enum MlStatus ml_matroid_parallel_circuits(const size_t *sizes,
                                           size_t len,
                                           int32_t chain,
                                           struct MlMatroid **out);

// Ground set size and rank.
//
// # Safety
// `m` must be a live handle; `n` and `rank` valid for writing.
enum MlStatus ml_matroid_size(const struct MlMatroid *m, size_t *n, size_t *rank);

// Number of bases.
//
// # Safety
// `m` must be a live handle and `out` valid for writing.
enum MlStatus ml_matroid_bases(const struct MlMatroid *m, uint64_t *out);

// The matroid as JSON, with its ordering when it carries one.
//
// # Safety
// `m` must be a live handle and `out` valid for writing.
enum MlStatus ml_matroid_json(const struct MlMatroid *m, char **out);

// f- and h-vector JSON of the broken circuit complex. `ordering` is a
// comma-separated label list, or null for the carried/identity ordering.
//
// # Safety
// `m` must be a live handle, `ordering` null or NUL-terminated, `out` valid.
enum MlStatus ml_hvector(const struct MlMatroid *m, const char *ordering, char **out);

// Full NBC check. Writes 1 or 0 to `is_basis` and the JSON report to
// `report` (either may be null). `field` is e.g. "gf2", "gf3" or "q".
//
// # Safety
// `m` must be a live handle; string arguments null or NUL-terminated;
// non-null outputs valid for writing.
enum MlStatus ml_nbc_check(const struct MlMatroid *m,
                           const char *ordering,
                           const char *field,
                           int32_t *is_basis,
                           char **report);

// Ordering search; `policy` is "exhaustive", "sample:N:SEED" or
// "first-hit", `shard` is "i/m" or null. Writes the JSON report.
//
// # Safety
// `m` must be a live handle; strings null or NUL-terminated; `out` valid.
enum MlStatus ml_search(const struct MlMatroid *m,
                        const char *field,
                        const char *policy,
                        const char *shard,
                        size_t workers,
                        char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MATROIDLAB_H */
