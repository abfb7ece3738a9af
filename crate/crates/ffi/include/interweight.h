#ifndef INTERWEIGHT_H
#define INTERWEIGHT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum IwStatus {
  IW_STATUS_OK = 0,
  IW_STATUS_NULL_POINTER = 1,
  IW_STATUS_INVALID_ARGUMENT = 2,
  IW_STATUS_INVALID_MATRIX = 3,
  IW_STATUS_LEVEL_TOO_HIGH = 4,
  IW_STATUS_OUT_OF_RANGE = 5,
  IW_STATUS_INTERNAL = 6,
} IwStatus;

// Table kind selector.
typedef enum IwTableKind {
  IW_TABLE_KIND_TRIANGLE = 0,
  IW_TABLE_KIND_INTERWEIGHT = 1,
} IwTableKind;

// A nonexistence certificate.
typedef struct IwCertificate IwCertificate;

// A validated quotient matrix.
typedef struct IwQuotient IwQuotient;

// A computed distribution table.
typedef struct IwTable IwTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Validates an m×m row-major quotient matrix for the n-cube.
//
// # Safety
// `entries` must point to `m * m` values; `out` must be a valid pointer.
enum IwStatus iw_quotient_new(const int64_t *entries, size_t m, size_t n, struct IwQuotient **out);

// # Safety
// `q` must come from [`iw_quotient_new`] and not be used afterwards. Null is ignored.
void iw_quotient_free(struct IwQuotient *q);

// Number of cells.
//
// # Safety
// `q` must be a live handle or null (returns 0).
size_t iw_quotient_cells(const struct IwQuotient *q);

// Size of cell `i` (0-based) as a decimal or `p/q` string.
//
// # Safety
// `q` must be a live handle; `out` a valid pointer.
enum IwStatus iw_quotient_cell_size(const struct IwQuotient *q, size_t i, char **out);

// Builds every level up to `max_level`.
//
// # Safety
// `q` must be a live handle; `out` a valid pointer.
enum IwStatus iw_table_build(const struct IwQuotient *q,
                             enum IwTableKind kind,
                             size_t max_level,
                             struct IwTable **out);

// # Safety
// `t` must come from [`iw_table_build`] and not be used afterwards. Null is ignored.
void iw_table_free(struct IwTable *t);

// Highest computed level.
//
// # Safety
// `t` must be a live handle or null (returns 0).
size_t iw_table_max_level(const struct IwTable *t);

// Entry `(i, j, k)` (0-based) of `T^{r1,r2,r3}` as a decimal or `p/q` string.
//
// # Safety
// `t` must be a live handle; `out` a valid pointer.
enum IwStatus iw_table_entry(const struct IwTable *t,
                             size_t r1,
                             size_t r2,
                             size_t r3,
                             size_t i,
                             size_t j,
                             size_t k,
                             char **out);

// Screens an m×m row-major matrix. `max_level < 0` means the full depth `n`.
// Invalid matrices still produce a certificate.
//
// # Safety
// `entries` must point to `m * m` values; `out` must be a valid pointer.
enum IwStatus iw_certify(const int64_t *entries,
                         size_t m,
                         size_t n,
                         int64_t max_level,
                         struct IwCertificate **out);

// # Safety
// `c` must come from [`iw_certify`] and not be used afterwards. Null is ignored.
void iw_certificate_free(struct IwCertificate *c);

// 1 if the certificate proves nonexistence, 0 for a candidate, -1 for null.
//
// # Safety
// `c` must be a live handle or null.
int32_t iw_certificate_nonexistent(const struct IwCertificate *c);

// The certificate as a JSON document.
//
// # Safety
// `c` must be a live handle; `out` a valid pointer.
enum IwStatus iw_certificate_json(const struct IwCertificate *c, char **out);

// Canonical rendering of `P^{r1,r2,r3}(x, y, z)`.
//
// # Safety
// `out` must be a valid pointer.
enum IwStatus iw_poly_render(int64_t r1, int64_t r2, int64_t r3, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void iw_string_free(char *s);

// Message of the last failure on this thread, or null. Free with [`iw_string_free`].
char *iw_last_error_message(void);

// Static description of a status code.
const char *iw_status_name(enum IwStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INTERWEIGHT_H */
