#ifndef CLUSTER_SNAKE_H
#define CLUSTER_SNAKE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a call.
typedef enum CsStatus {
  CS_STATUS_OK = 0,
  // A required pointer argument was null.
  CS_STATUS_NULL_POINTER = 1,
  // An input string was not valid UTF-8.
  CS_STATUS_INVALID_UTF8 = 2,
  // Malformed JSON, unknown labels or fields.
  CS_STATUS_PARSE = 3,
  // Well-formed input that violates the surface or arc rules.
  CS_STATUS_VALIDATION = 4,
  // The input is valid but the computation failed or is unsupported.
  CS_STATUS_COMPUTATION = 5,
  // An output buffer is too small; the required length is reported.
  CS_STATUS_BUFFER_TOO_SMALL = 6,
  // An internal error was caught at the boundary.
  CS_STATUS_INTERNAL = 7,
} CsStatus;

// The expansion of a tagged arc on a surface.
typedef struct CsExpansion CsExpansion;

// A triangulated surface.
typedef struct CsSurface CsSurface;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or an empty string. The
// pointer stays valid until the next call on this thread.
const char *cs_last_error(void);

// Version of the file formats accepted by this library.
uint32_t cs_format_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void cs_string_free(char *s);

// Parses and validates a surface file given as JSON text.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum CsStatus cs_surface_parse(const char *json, struct CsSurface **out);

// Releases a surface. Null is ignored.
//
// # Safety
// `s` must be null or a handle from [`cs_surface_parse`], not yet freed.
void cs_surface_free(struct CsSurface *s);

// Number of internal arcs, which is the rank and the g-vector length.
//
// # Safety
// `s` must be null or a live surface handle; null gives 0.
size_t cs_surface_rank(const struct CsSurface *s);

// Expands the tagged arc described by an arc file given as JSON text.
//
// # Safety
// `s` must be a live surface handle, `arc_json` a NUL-terminated string and
// `out` a valid pointer.
enum CsStatus cs_expand(const struct CsSurface *s, const char *arc_json, struct CsExpansion **out);

// Releases an expansion. Null is ignored.
//
// # Safety
// `e` must be null or a handle from [`cs_expand`], not yet freed.
void cs_expansion_free(struct CsExpansion *e);

// The expansion as `(numerator) / (denominator)` with common factors
// cancelled.
//
// # Safety
// `e` must be a live expansion handle and `out` a valid pointer.
enum CsStatus cs_expansion_text(const struct CsExpansion *e, char **out);

// The F-polynomial in canonical text form.
//
// # Safety
// `e` must be a live expansion handle and `out` a valid pointer.
enum CsStatus cs_expansion_fpoly(const struct CsExpansion *e, char **out);

// Number of matchings (or compatible pairs) summed over.
//
// # Safety
// `e` must be null or a live expansion handle; null gives 0.
size_t cs_expansion_terms(const struct CsExpansion *e);

// Writes the g-vector into `buf`, which holds `cap` entries. The length is
// stored in `len` in every case, so a first call with `cap = 0` sizes the
// buffer.
//
// # Safety
// `e` must be a live expansion handle, `len` a valid pointer and `buf`
// valid for `cap` writes.
enum CsStatus cs_expansion_gvector(const struct CsExpansion *e,
                                   int64_t *buf,
                                   size_t cap,
                                   size_t *len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLUSTER_SNAKE_H */
