#ifndef QPCOLLAPSE_H
#define QPCOLLAPSE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every fallible call.
 */
typedef enum QpStatus {
  QP_STATUS_OK = 0,
  QP_STATUS_NULL_POINTER = 1,
  QP_STATUS_INVALID_UTF8 = 2,
  /**
   * Bad JSON, bad rational strings or a degenerate vertex list.
   */
  QP_STATUS_MALFORMED = 3,
  /**
   * Well-formed polygon that is not Fano.
   */
  QP_STATUS_NOT_FANO = 4,
  /**
   * Mutation data rejected or not a factor.
   */
  QP_STATUS_INVALID_MUTATION = 5,
  /**
   * Not a Markov triple.
   */
  QP_STATUS_INVALID_TRIPLE = 6,
  /**
   * An internal consistency check failed.
   */
  QP_STATUS_INTERNAL = 7,
  QP_STATUS_PANIC = 8,
} QpStatus;

/**
 * Opaque handle to a Fano polygon.
 */
typedef struct QpPolygon QpPolygon;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `{"vertices": [["p/q","r/s"], ...]}` and validates it as Fano.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a writable pointer.
 */
enum QpStatus qp_polygon_from_json(const char *json, struct QpPolygon **out);

/**
 * Builds a Fano polygon from `n` integer vertices `xy[2i], xy[2i+1]` given
 * in cyclic order.
 *
 * # Safety
 * `xy` must point to `2 n` readable values and `out` must be writable.
 */
enum QpStatus qp_polygon_from_vertices(const int64_t *xy, size_t n, struct QpPolygon **out);

/**
 * # Safety
 * `p` must be null or a handle from this library not yet freed.
 */
void qp_polygon_free(struct QpPolygon *p);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void qp_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into the library on this thread.
 */
const char *qp_last_error(void);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum QpStatus qp_polygon_to_json(const struct QpPolygon *p, char **out);

/**
 * The dual polygon in the JSON interchange format.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum QpStatus qp_polygon_dual_json(const struct QpPolygon *p, char **out);

/**
 * Denominator of the dual polygon.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum QpStatus qp_dual_denominator(const struct QpPolygon *p, uint64_t *out);

/**
 * Number of lattice points in `k` times the dual polygon.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum QpStatus qp_dual_count_points(const struct QpPolygon *p, uint64_t k, uint64_t *out);

/**
 * Minimal period of the Ehrhart quasi-polynomial of the dual.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum QpStatus qp_dual_quasi_period(const struct QpPolygon *p, uint64_t *out);

/**
 * A new handle holding the `GL_2(Z)` normal form.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum QpStatus qp_polygon_normal_form(const struct QpPolygon *p, struct QpPolygon **out);

/**
 * Mutation with covector `(w0, w1)` and factor `conv{0, m (f0, f1)}`. The
 * result is the exact hull; `normal_form` selects the normal form instead.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum QpStatus qp_polygon_mutate(const struct QpPolygon *p,
                                int64_t w0,
                                int64_t w1,
                                int64_t f0,
                                int64_t f1,
                                uint64_t m,
                                bool normal_form,
                                struct QpPolygon **out);

/**
 * Full collapse analysis as JSON.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum QpStatus qp_analyze_json(const struct QpPolygon *p, char **out);

/**
 * Report for the Markov triple `(a, b, c)` as JSON.
 *
 * # Safety
 * `out` must be writable.
 */
enum QpStatus qp_markov_report_json(uint64_t a, uint64_t b, uint64_t c, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QPCOLLAPSE_H */
