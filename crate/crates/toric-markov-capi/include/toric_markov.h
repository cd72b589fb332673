#ifndef TORIC_MARKOV_H
#define TORIC_MARKOV_H

/* Generated by cbindgen from toric-markov-capi; edit the Rust source instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; zero is success, everything else is an error class aligned
 * with the command-line exit codes.
 */
typedef enum TmStatus {
  TM_OK = 0,
  /**
   * Text input could not be parsed (matrix, moves, key, or sequence).
   */
  TM_ERR_PARSE = 2,
  /**
   * The matrix is not a configuration matrix.
   */
  TM_ERR_NOT_CONFIGURATION = 3,
  /**
   * A fiber, pair, or materialization limit was exceeded.
   */
  TM_ERR_LIMIT = 4,
  /**
   * A supplied move set failed verification.
   */
  TM_ERR_VERIFY = 5,
  /**
   * A required pointer argument was NULL.
   */
  TM_ERR_NULL_ARGUMENT = 6,
  /**
   * A string argument was not valid UTF-8.
   */
  TM_ERR_UTF8 = 7,
  /**
   * The library panicked; file a bug.
   */
  TM_ERR_PANIC = 8,
} TmStatus;

/**
 * Opaque matrix handle: the admitted matrix, the completion budget, and a
 * lazily computed (or externally supplied) seed basis shared by the
 * analyses.
 */
typedef struct TmMatrix TmMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse and admit a configuration matrix with default limits.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer; the
 * returned handle must be released with `tm_matrix_free`.
 */
enum TmStatus tm_matrix_new(const char *text, struct TmMatrix **out);

/**
 * As `tm_matrix_new` with explicit fiber-size and S-pair caps.
 *
 * # Safety
 * Same contract as `tm_matrix_new`.
 */
enum TmStatus tm_matrix_new_with_limits(const char *text,
                                        uint64_t fiber_limit,
                                        uint64_t pairs_budget,
                                        struct TmMatrix **out);

/**
 * Release a matrix handle; NULL is ignored.
 *
 * # Safety
 * `matrix` must come from a constructor of this library and not be used
 * afterwards.
 */
void tm_matrix_free(struct TmMatrix *matrix);

/**
 * Install an externally supplied seed basis (one move per line). The set is
 * verified before being accepted; on failure the handle keeps its previous
 * seed state.
 *
 * # Safety
 * `matrix` must be a live handle; `moves_text` a NUL-terminated string.
 */
enum TmStatus tm_matrix_set_seed_basis(struct TmMatrix *matrix, const char *moves_text);

/**
 * Exact number of minimal Markov bases as a decimal string.
 *
 * # Safety
 * `matrix` must be a live handle; `out` receives a string to free with
 * `tm_string_free`.
 */
enum TmStatus tm_count(const struct TmMatrix *matrix, char **out);

/**
 * The seed basis itself (JSON move list).
 *
 * # Safety
 * As `tm_count`.
 */
enum TmStatus tm_seed_basis(const struct TmMatrix *matrix, char **out);

/**
 * Moves in every minimal Markov basis (JSON move list).
 *
 * # Safety
 * As `tm_count`.
 */
enum TmStatus tm_indispensable_set(const struct TmMatrix *matrix, char **out);

/**
 * Moves in some minimal Markov basis (JSON move list).
 *
 * # Safety
 * As `tm_count`.
 */
enum TmStatus tm_universal_markov(const struct TmMatrix *matrix, char **out);

/**
 * All minimal Markov bases as JSON, refused beyond `limit` (0 keeps the
 * library default of 100000).
 *
 * # Safety
 * As `tm_count`.
 */
enum TmStatus tm_markov_bases(const struct TmMatrix *matrix, uint64_t limit, char **out);

/**
 * `count` exactly uniform samples from the minimal Markov bases, as JSON.
 *
 * # Safety
 * As `tm_count`.
 */
enum TmStatus tm_random_markov(const struct TmMatrix *matrix,
                               uint64_t rng_seed,
                               uint64_t count,
                               char **out);

/**
 * Verify a move set (one move per line) against the generating fibers:
 * returns `{"generates": bool, "minimal": bool, "certificate": ...}`.
 *
 * # Safety
 * As `tm_count`, plus `moves_text` must be a NUL-terminated string.
 */
enum TmStatus tm_verify(const struct TmMatrix *matrix, const char *moves_text, char **out);

/**
 * DOT rendering of one fiber graph; `key` is comma-separated coordinates.
 *
 * # Safety
 * As `tm_count`, plus `key` must be a NUL-terminated string.
 */
enum TmStatus tm_fiber_graph_dot(const struct TmMatrix *matrix, const char *key, char **out);

/**
 * Decode a Prüfer sequence; returns `{"n": ..., "edges": [[u,v],...]}`.
 *
 * # Safety
 * `seq` must point to `seq_len` readable entries (may be NULL when
 * `seq_len` is 0); `out` as in `tm_count`.
 */
enum TmStatus tm_prufer_tree(const uint64_t *seq, size_t seq_len, uint64_t n, char **out);

/**
 * Message describing the last error on this thread; valid until the next
 * failing call on the same thread. Never NULL.
 */
const char *tm_last_error(void);

/**
 * Release a string returned by this library; NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void tm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORIC_MARKOV_H */
