#ifndef MATGROUP_INTERP_H
#define MATGROUP_INTERP_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes. Codes from 10 upward mirror the library error variants
// one to one.
typedef enum MgiStatus {
  MGI_STATUS_OK = 0,
  MGI_STATUS_NULL_POINTER = 1,
  MGI_STATUS_INVALID_UTF8 = 2,
  MGI_STATUS_PANIC = 3,
  MGI_STATUS_NON_UNIT = 10,
  MGI_STATUS_INFINITE_RING = 11,
  MGI_STATUS_BAD_INDEX = 12,
  MGI_STATUS_NOT_INVERTIBLE = 13,
  MGI_STATUS_SPEC_MISMATCH = 14,
  MGI_STATUS_TOO_LARGE = 15,
  MGI_STATUS_NOT_FIELD = 16,
  MGI_STATUS_DET_NOT_ONE = 17,
  MGI_STATUS_SCHEDULE_TOO_SHORT = 18,
  MGI_STATUS_NOT_UNITRIANGULAR = 19,
  MGI_STATUS_NOT_IN_CARRIER = 20,
  MGI_STATUS_WITNESS_CHECK_FAILED = 21,
  MGI_STATUS_BAD_INDICES = 22,
  MGI_STATUS_CHAR_TWO = 23,
  MGI_STATUS_NOT_NORMAL = 24,
  MGI_STATUS_NOT_COBOUNDARY = 25,
  MGI_STATUS_INVALID_COCYCLE = 26,
  MGI_STATUS_BAD_SPLIT = 27,
  MGI_STATUS_NOT_TRIVIAL_COCYCLE = 28,
  MGI_STATUS_INCONSISTENT_CONTEXT = 29,
  MGI_STATUS_DIAGONAL_FACTOR = 30,
  MGI_STATUS_PARSE = 31,
} MgiStatus;

// Report renderings for [`mgi_report_render`].
typedef enum MgiFormat {
  MGI_FORMAT_JSON = 0,
  MGI_FORMAT_CSV = 1,
  MGI_FORMAT_MARKDOWN = 2,
} MgiFormat;

// A square matrix over a ring.
typedef struct MgiMatrix MgiMatrix;

// A verification report.
typedef struct MgiReport MgiReport;

// A coefficient ring such as `gf:7`, `zmod:6` or `q`.
typedef struct MgiRing MgiRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer is
// valid until the next `mgi_*` call on the same thread.
const char *mgi_last_error(void);

// Static name of a status code.
const char *mgi_status_name(enum MgiStatus status);

// # Safety
// `s` must come from this library and not have been freed.
void mgi_string_free(char *s);

// Parses a ring such as `gf:5`, `zmod:6` or `q`.
//
// # Safety
// `spec` must be a nul-terminated string; `out` must be writable.
enum MgiStatus mgi_ring_parse(const char *spec, struct MgiRing **out);

// # Safety
// `ring` must come from [`mgi_ring_parse`] and not have been freed.
void mgi_ring_free(struct MgiRing *ring);

// # Safety
// `ring` must be a live handle; `out` must be writable.
enum MgiStatus mgi_matrix_identity(const struct MgiRing *ring, uintptr_t n, struct MgiMatrix **out);

// Builds `t_ij(alpha)` with 1-based indices.
//
// # Safety
// `ring` must be a live handle, `alpha` a nul-terminated string and `out`
// writable.
enum MgiStatus mgi_matrix_transvection(const struct MgiRing *ring,
                                       uintptr_t n,
                                       uintptr_t i,
                                       uintptr_t j,
                                       const char *alpha,
                                       struct MgiMatrix **out);

// Reads a matrix from `{"ring": .., "n": .., "entries": [[..], ..]}`.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum MgiStatus mgi_matrix_from_json(const char *json, struct MgiMatrix **out);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum MgiStatus mgi_matrix_to_json(const struct MgiMatrix *m, char **out);

// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum MgiStatus mgi_matrix_mul(const struct MgiMatrix *a,
                              const struct MgiMatrix *b,
                              struct MgiMatrix **out);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum MgiStatus mgi_matrix_inv(const struct MgiMatrix *m, struct MgiMatrix **out);

// Writes `a == b` to `out`.
//
// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum MgiStatus mgi_matrix_equal(const struct MgiMatrix *a, const struct MgiMatrix *b, bool *out);

// # Safety
// `m` must come from this library and not have been freed.
void mgi_matrix_free(struct MgiMatrix *m);

// Decomposes `m` into transvections and writes the word as JSON. With
// `gl` set, a determinant other than 1 is carried by a trailing `d_n(det)`.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum MgiStatus mgi_decompose(const struct MgiMatrix *m, bool gl, char **out);

// Computes `x ⊗ y` inside the carrier `T_ik` of `GL_n` and writes the
// decoded ring element.
//
// # Safety
// `ring` must be a live handle, `x` and `y` nul-terminated strings and
// `out` writable.
enum MgiStatus mgi_interpret_mul(const struct MgiRing *ring,
                                 uintptr_t n,
                                 uintptr_t i,
                                 uintptr_t k,
                                 const char *x,
                                 const char *y,
                                 char **out);

// Computes `x ⊕ y` inside the carrier `T_ik` of `GL_n`.
//
// # Safety
// As for [`mgi_interpret_mul`].
enum MgiStatus mgi_interpret_add(const struct MgiRing *ring,
                                 uintptr_t n,
                                 uintptr_t i,
                                 uintptr_t k,
                                 const char *x,
                                 const char *y,
                                 char **out);

// Runs a verification suite by name (`steinberg`, `decompose`, `interp`,
// `definable`, `a4`, `cohom`, `deform` or `all`). A report whose checks
// fail is still returned with status `MGI_OK`; query it with
// [`mgi_report_pass`].
//
// # Safety
// `suite` must be a nul-terminated string, `ring` a live handle and `out`
// writable.
enum MgiStatus mgi_verify(const char *suite,
                          const struct MgiRing *ring,
                          uintptr_t n,
                          uint64_t seed,
                          uintptr_t cap,
                          struct MgiReport **out);

// Overall verdict of a report; false for a null handle.
//
// # Safety
// `report` must be null or a live handle.
bool mgi_report_pass(const struct MgiReport *report);

// Number of checks in a report; 0 for a null handle.
//
// # Safety
// `report` must be null or a live handle.
uintptr_t mgi_report_check_count(const struct MgiReport *report);

// # Safety
// `report` must be a live handle; `out` must be writable.
enum MgiStatus mgi_report_render(const struct MgiReport *report, enum MgiFormat format, char **out);

// # Safety
// `report` must come from [`mgi_verify`] and not have been freed.
void mgi_report_free(struct MgiReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MATGROUP_INTERP_H */
