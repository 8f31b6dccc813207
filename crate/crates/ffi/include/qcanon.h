#ifndef QCANON_H
#define QCANON_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QcStatus {
  QC_STATUS_OK = 0,
  // A verification ran and found counterexamples.
  QC_STATUS_VERIFICATION_FAILED = 1,
  // Bad type, word, check name or range.
  QC_STATUS_INVALID_INPUT = 2,
  QC_STATUS_RESOURCE_LIMIT = 3,
  QC_STATUS_NULL_POINTER = 4,
  QC_STATUS_INVALID_UTF8 = 5,
  // Any other library error.
  QC_STATUS_INTERNAL = 6,
  QC_STATUS_PANIC = 7,
} QcStatus;

// A Cartan datum with its PBW and canonical-basis caches.
typedef struct QcDatum QcDatum;

// The outcome of a verification run.
typedef struct QcReport QcReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a datum for `A1`, `A1xA1`, `A2`, `A3`, `B2`, `D4` or `G2`.
//
// # Safety
// `tag` must be a NUL-terminated string and `out` a valid pointer.
enum QcStatus qc_datum_new(const char *tag, struct QcDatum **out);

// # Safety
// `datum` must come from [`qc_datum_new`] and not be used afterwards.
void qc_datum_free(struct QcDatum *datum);

// # Safety
// `datum` must be a live handle and `out` a valid pointer.
enum QcStatus qc_datum_rank(const struct QcDatum *datum, size_t *out);

// Canonical basis elements of weight height at most `max_height` in the
// PBW basis of `word` (comma-separated labels), as the JSON document of
// `qcanon basis`.
//
// # Safety
// `datum` must be a live handle, `word` a NUL-terminated string and
// `out` a valid pointer.
enum QcStatus qc_basis_json(struct QcDatum *datum,
                            const char *word,
                            int32_t max_height,
                            char **out);

// Runs the comma-separated `checks` as `qcanon verify` would. `tag` may be
// null for the default types; `max_height < 0` and `grid == 0` select the
// defaults. Returns [`QcStatus::Ok`] whenever a report was produced, also
// when it records failures; see [`qc_report_passed`].
//
// # Safety
// `checks` must be a NUL-terminated string, `tag` null or one, and `out`
// a valid pointer.
enum QcStatus qc_verify(const char *checks,
                        const char *tag,
                        int32_t max_height,
                        uint32_t grid,
                        uint64_t seed,
                        struct QcReport **out);

// [`QcStatus::Ok`] if every check passed, else
// [`QcStatus::VerificationFailed`].
//
// # Safety
// `report` must be a live handle.
enum QcStatus qc_report_passed(const struct QcReport *report);

// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum QcStatus qc_report_json(const struct QcReport *report, char **out);

// # Safety
// `report` must come from [`qc_verify`] and not be used afterwards.
void qc_report_free(struct QcReport *report);

// The B2 label map from `(1,2,1,2)` to `(2,1,2,1)`, or its inverse.
//
// # Safety
// `input` and `output` must point to four `int64_t` each.
enum QcStatus qc_phi_b2(const int64_t *input, bool inverse, int64_t *output);

// Copy of the last error message on this thread, empty if none.
//
// # Safety
// `out` must be a valid pointer.
enum QcStatus qc_last_error(char **out);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void qc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCANON_H */
