#ifndef QK_FFI_H
#define QK_FFI_H

/* Generated by cbindgen from qk-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum {
  QK_STATUS_OK = 0,
  QK_STATUS_NULL_POINTER = 1,
  QK_STATUS_INVALID_ARGUMENT = 2,
  QK_STATUS_UNSUPPORTED_DIMENSION = 3,
  QK_STATUS_INTERNAL_ERROR = 4,
} QkStatus;

/**
 * Opaque handle to a quadric K-theory ring.
 */
typedef struct QkRing QkRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build the K-ring of the (m-1)-dimensional quadric. On success `*out`
 * owns the ring; release it with `qk_ring_free`.
 *
 * # Safety
 * `out` must be a valid pointer to writable memory for one pointer.
 */
QkStatus qk_ring_new(uint32_t m, QkRing **out);

/**
 * Release a ring created by `qk_ring_new`. Null is a no-op.
 *
 * # Safety
 * `ring` must be null or a pointer previously returned by `qk_ring_new`
 * that has not been freed.
 */
void qk_ring_free(QkRing *ring);

/**
 * Rank of the free abelian group underlying the ring.
 *
 * # Safety
 * `ring` and `out` must be valid pointers.
 */
QkStatus qk_ring_rank(const QkRing *ring, uint32_t *out);

/**
 * Ambient projective dimension m of the ring.
 *
 * # Safety
 * `ring` and `out` must be valid pointers.
 */
QkStatus qk_ring_ambient_dimension(const QkRing *ring, uint32_t *out);

/**
 * Label of basis element `index` ("1", "L", "L^2", ..., "X" / "X+", "X-")
 * as a fresh string; free with `qk_string_free`.
 *
 * # Safety
 * `ring` and `out` must be valid pointers.
 */
QkStatus qk_ring_basis_label(const QkRing *ring, uint32_t index, char **out);

/**
 * Full ring document (basis, multiplication table, provenance) as JSON;
 * free with `qk_string_free`.
 *
 * # Safety
 * `ring` and `out` must be valid pointers.
 */
QkStatus qk_ring_to_json(const QkRing *ring, char **out);

/**
 * Multiply two classes given as JSON arrays of integers (numbers or decimal
 * strings) in the canonical basis; the product is returned the same way.
 * Free the result with `qk_string_free`.
 *
 * # Safety
 * `ring`, `a`, `b` and `out` must be valid pointers.
 */
QkStatus qk_ring_mul_json(const QkRing *ring, const char *a, const char *b, char **out);

/**
 * Exponent e with 2^e = the integer divisibility threshold of 1 + O(1) in
 * K(F), i.e. e = floor((m+1)/2).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
QkStatus qk_divisibility_exponent(uint32_t m, uint32_t *out);

/**
 * Decide whether 1 + O(1) divides the integer `l` (decimal string) in the
 * K-ring at ambient dimension m. When `out_witness_json` is non-null and
 * the answer is yes, it receives the witness coordinates as JSON (free with
 * `qk_string_free`; it is set to null otherwise).
 *
 * # Safety
 * `l` and `out_divisible` must be valid pointers; `out_witness_json` may be
 * null.
 */
QkStatus qk_hyperplane_divides(uint32_t m,
                               const char *l,
                               bool *out_divisible,
                               char **out_witness_json);

/**
 * Divisibility verdict for an n-dimensional secant-deficient manifold of
 * type delta: 1 admissible, 0 rejected, -1 when the constraint does not
 * apply (delta < 3).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
QkStatus qk_lqel_admissible(uint64_t n, uint64_t delta, int32_t *out);

/**
 * Possible Severi-variety dimensions up to `n_max`, written into `buf`
 * (capacity `cap`); `*written` receives the count. Returns
 * `InvalidArgument` when the buffer is too small.
 *
 * # Safety
 * `buf` must point to at least `cap` writable u64 slots; `written` must be
 * a valid pointer.
 */
QkStatus qk_severi_dimensions(uint64_t n_max, uint64_t *buf, uintptr_t cap, uintptr_t *written);

/**
 * 2^[(m+1)/2] as a decimal string; free with `qk_string_free`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
QkStatus qk_divisibility_threshold(uint32_t m, char **out);

/**
 * Release a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must be null or a pointer previously returned by a qk_* function.
 */
void qk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QK_FFI_H */
