#ifndef BLOBCELL_H
#define BLOBCELL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum BlobcellStatus {
  BLOBCELL_STATUS_OK = 0,
  BLOBCELL_STATUS_INVALID_ARGUMENT = 1,
  BLOBCELL_STATUS_PARSE_ERROR = 2,
  BLOBCELL_STATUS_VERIFICATION_FAILED = 3,
  BLOBCELL_STATUS_DIVISION_BY_ZERO = 4,
  BLOBCELL_STATUS_NULL_POINTER = 5,
  BLOBCELL_STATUS_PANIC = 6,
} BlobcellStatus;

/**
 * Diagonal blocks of a blob Gram matrix.
 */
typedef struct BlobcellBlocks BlobcellBlocks;

/**
 * Polynomial in `ℚ[x, y]`.
 */
typedef struct BlobcellPoly BlobcellPoly;

/**
 * Outcome of a graded sum formula check.
 */
typedef struct BlobcellReport BlobcellReport;

/**
 * Element of the Temperley-Lieb algebra.
 */
typedef struct BlobcellTl BlobcellTl;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last error on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *blobcell_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void blobcell_string_free(char *s);

/**
 * Parses a polynomial such as `"xy+(1/2)y^2"`.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum BlobcellStatus blobcell_poly_parse(const char *text, struct BlobcellPoly **out);

/**
 * # Safety
 * `p` must be a valid handle; `out` must be writable.
 */
enum BlobcellStatus blobcell_poly_to_string(const struct BlobcellPoly *p, char **out);

/**
 * Writes 1 to `out` if the polynomials are equal, 0 otherwise.
 *
 * # Safety
 * `a`, `b` must be valid handles; `out` must be writable.
 */
enum BlobcellStatus blobcell_poly_equal(const struct BlobcellPoly *a,
                                        const struct BlobcellPoly *b,
                                        int32_t *out);

/**
 * # Safety
 * `p` must be null or a handle from this library, not used afterwards.
 */
void blobcell_poly_free(struct BlobcellPoly *p);

/**
 * `β_{k,λ}` computed from the Gram form.
 *
 * # Safety
 * `out` must be writable.
 */
enum BlobcellStatus blobcell_beta(size_t k, int64_t lambda, struct BlobcellPoly **out);

/**
 * The closed form of `β_{k,λ}` as a product of roots.
 *
 * # Safety
 * `out` must be writable.
 */
enum BlobcellStatus blobcell_beta_closed(size_t k, int64_t lambda, struct BlobcellPoly **out);

/**
 * Diagonal blocks of the Gram matrix of `Δ_n(λ)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum BlobcellStatus blobcell_gram_blocks(size_t n, int64_t lambda, struct BlobcellBlocks **out);

/**
 * # Safety
 * `b` must be a valid handle; `out` must be writable.
 */
enum BlobcellStatus blobcell_blocks_len(const struct BlobcellBlocks *b, size_t *out);

/**
 * Block `i`: multiplicity, degree and the monic diagonal entry `c_i`.
 *
 * # Safety
 * `b` must be a valid handle; the out pointers must be writable.
 */
enum BlobcellStatus blobcell_blocks_get(const struct BlobcellBlocks *b,
                                        size_t i,
                                        size_t *multiplicity,
                                        size_t *degree,
                                        struct BlobcellPoly **c);

/**
 * # Safety
 * `b` must be null or a handle from this library, not used afterwards.
 */
void blobcell_blocks_free(struct BlobcellBlocks *b);

/**
 * The Gram matrix of `Δ_n(λ)` with its basis, as JSON.
 *
 * # Safety
 * `out` must be writable.
 */
enum BlobcellStatus blobcell_gram_matrix_json(size_t n, int64_t lambda, char **out);

/**
 * The Jones-Wenzl idempotent `JW_n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum BlobcellStatus blobcell_jw(size_t n, struct BlobcellTl **out);

/**
 * Number of diagrams with nonzero coefficient.
 *
 * # Safety
 * `e` must be a valid handle; `out` must be writable.
 */
enum BlobcellStatus blobcell_tl_num_terms(const struct BlobcellTl *e, size_t *out);

/**
 * Expansion as `[{"word": "U1", "coeff": "1/2"}, …]` in canonical order.
 *
 * # Safety
 * `e` must be a valid handle; `out` must be writable.
 */
enum BlobcellStatus blobcell_tl_to_json(const struct BlobcellTl *e, char **out);

/**
 * # Safety
 * `e` must be null or a handle from this library, not used afterwards.
 */
void blobcell_tl_free(struct BlobcellTl *e);

/**
 * `dim_q Δ_n(λ)` as a Laurent polynomial string.
 *
 * # Safety
 * `out` must be writable.
 */
enum BlobcellStatus blobcell_graded_dim_cell(size_t n, int64_t lambda, char **out);

/**
 * Graded sum formula for `Δ_w(v)`; words are strings over `{s, t}`, `"e"`
 * for the identity.
 *
 * # Safety
 * `w`, `v` must be nul-terminated strings; `out` must be writable.
 */
enum BlobcellStatus blobcell_sum_formula_check(const char *w,
                                               const char *v,
                                               struct BlobcellReport **out);

/**
 * Writes 1 to `out` if both sides agree.
 *
 * # Safety
 * `r` must be a valid handle; `out` must be writable.
 */
enum BlobcellStatus blobcell_report_pass(const struct BlobcellReport *r, int32_t *out);

/**
 * Left side of the sum formula.
 *
 * # Safety
 * `r` must be a valid handle; `out` must be writable.
 */
enum BlobcellStatus blobcell_report_lhs(const struct BlobcellReport *r, char **out);

/**
 * Right side of the sum formula.
 *
 * # Safety
 * `r` must be a valid handle; `out` must be writable.
 */
enum BlobcellStatus blobcell_report_rhs(const struct BlobcellReport *r, char **out);

/**
 * The full report as JSON.
 *
 * # Safety
 * `r` must be a valid handle; `out` must be writable.
 */
enum BlobcellStatus blobcell_report_to_json(const struct BlobcellReport *r, char **out);

/**
 * # Safety
 * `r` must be null or a handle from this library, not used afterwards.
 */
void blobcell_report_free(struct BlobcellReport *r);

/**
 * Runs the verification suite with bounds capped at `max_n`; writes the
 * number of failing items to `failures`.
 *
 * # Safety
 * `failures` must be writable.
 */
enum BlobcellStatus blobcell_verify(size_t max_n, size_t *failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BLOBCELL_H */
