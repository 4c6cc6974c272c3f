/* C interface to the heppbound library. Exact values cross the boundary as rational strings ("p/q"); every handle and string returned must be released with the matching free function. */

#ifndef HEPPBOUND_H
#define HEPPBOUND_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum HbStatus {
  HB_STATUS_OK = 0,
  HB_STATUS_NULL_ARGUMENT = 1,
  HB_STATUS_INVALID_UTF8 = 2,
  HB_STATUS_PARSE_ERROR = 3,
  HB_STATUS_COMPUTE_ERROR = 4,
  HB_STATUS_POLE = 5,
  HB_STATUS_PANIC = 6,
} HbStatus;

/**
 * Opaque matroid handle.
 */
typedef struct HbMatroid HbMatroid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread; do not free it.
 */
const char *hb_last_error_message(void);

/**
 * Parse a graph (`v`/`e` lines), basis list (`n`/`b`) or GF(2) matrix
 * (`m` plus 0/1 rows) into a matroid handle.
 *
 * # Safety
 * `text` must point to a NUL-terminated string; `out` must be valid.
 */
enum HbStatus hb_matroid_parse(const char *text, struct HbMatroid **out);

/**
 * Uniform matroid of size `n` and rank `r`.
 *
 * # Safety
 * `out` must be valid.
 */
enum HbStatus hb_matroid_uniform(uint32_t n, uint32_t r, struct HbMatroid **out);

/**
 * Release a matroid handle.
 *
 * # Safety
 * `handle` must come from this library and not be freed twice.
 */
void hb_matroid_free(struct HbMatroid *handle);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `ptr` must come from this library and not be freed twice.
 */
void hb_string_free(char *ptr);

/**
 * Ground-set size.
 *
 * # Safety
 * `handle` must be a live matroid handle.
 */
enum HbStatus hb_matroid_size(const struct HbMatroid *handle, uint32_t *out);

/**
 * Rank of the subset given as a bitmask over edge indices.
 *
 * # Safety
 * `handle` must be a live matroid handle; `out` must be valid.
 */
enum HbStatus hb_matroid_rank(const struct HbMatroid *handle, uint64_t subset, uint32_t *out);

/**
 * Hepp bound as an exact rational string. `indices` may be NULL for unit
 * indices, or a comma-separated list of rationals.
 *
 * # Safety
 * `handle` must be live; `out` must be valid; `indices` NULL or a string.
 */
enum HbStatus hb_hepp(const struct HbMatroid *handle, const char *indices, char **out);

/**
 * Position-space Hepp bound as an exact rational string.
 *
 * # Safety
 * As for [`hb_hepp`].
 */
enum HbStatus hb_hepp_position(const struct HbMatroid *handle, const char *indices, char **out);

/**
 * Improved rational bound from bridgeless flags, as a rational string.
 *
 * # Safety
 * `handle` must be live; `out` must be valid.
 */
enum HbStatus hb_hepp_one(const struct HbMatroid *handle, char **out);

/**
 * Crapo beta invariant.
 *
 * # Safety
 * `handle` must be live; `out` must be valid.
 */
enum HbStatus hb_crapo(const struct HbMatroid *handle, int64_t *out);

/**
 * Derksen invariant as a JSON array of `{"word", "mult"}` objects.
 *
 * # Safety
 * `handle` must be live; `out` must be valid.
 */
enum HbStatus hb_derksen_json(const struct HbMatroid *handle, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HEPPBOUND_H */
