#ifndef CCLOSED_H
#define CCLOSED_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum CcStatus {
  CC_STATUS_OK = 0,
  CC_STATUS_NULL_POINTER = 1,
  CC_STATUS_PARSE = 2,
  CC_STATUS_IO = 3,
  CC_STATUS_INVALID_ARGUMENT = 4,
  CC_STATUS_OUT_OF_RANGE = 5,
  CC_STATUS_SUBCALL_TOO_LARGE = 6,
  CC_STATUS_BUDGET_EXCEEDED = 7,
  CC_STATUS_BOUND_VIOLATION = 8,
  CC_STATUS_BUFFER_TOO_SMALL = 9,
  CC_STATUS_PANIC = 10,
} CcStatus;

typedef enum CcAlgorithm {
  CC_ALGORITHM_PIVOT = 0,
  CC_ALGORITHM_C_CLOSED = 1,
} CcAlgorithm;

/**
 * Opaque handle to a canonical set of maximal cliques.
 */
typedef struct CcCliqueSet CcCliqueSet;

/**
 * Opaque graph handle.
 */
typedef struct CcGraph CcGraph;

/**
 * Clique-count bounds as base-10 logarithms; a zero bound is `-inf`.
 */
typedef struct CcBounds {
  uint64_t n;
  uint64_t m;
  uint32_t c_closure;
  uint32_t weak_c_closure;
  double a_bound;
  bool count_available;
  uint64_t observed_maximal_cliques;
  double log10_bound_init;
  double log10_bound_improved;
  double log10_bound_abound;
  double log10_bound_stats;
  /**
   * Number of bounds below the observed count.
   */
  uint32_t violations;
} CcBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or null. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *cc_last_error_message(void);

/**
 * Parses an edge list held in a NUL-terminated string.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum CcStatus cc_graph_from_edge_list(const char *text, struct CcGraph **out);

/**
 * Loads an edge-list file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a writable pointer.
 */
enum CcStatus cc_graph_load(const char *path, struct CcGraph **out);

/**
 * Builds a graph on `n` vertices from `edge_count` pairs stored flat in
 * `edges` (`2 * edge_count` entries). Self-loops and repeats are dropped.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values (or be null when
 * `edge_count` is 0) and `out` must be writable.
 */
enum CcStatus cc_graph_from_edges(size_t n,
                                  const uint32_t *edges,
                                  size_t edge_count,
                                  struct CcGraph **out);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void cc_graph_free(struct CcGraph *g);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t cc_graph_vertex_count(const struct CcGraph *g);

/**
 * Edge count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t cc_graph_edge_count(const struct CcGraph *g);

/**
 * Original label of internal vertex `v` (the id itself for graphs built
 * from arrays).
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum CcStatus cc_graph_label(const struct CcGraph *g, uint32_t v, uint64_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum CcStatus cc_c_closure(const struct CcGraph *g, uint32_t *out);

/**
 * Weak closure and, if `ordering` is non-null, the elimination ordering
 * as internal ids. `ordering_len` must be at least the vertex count.
 *
 * # Safety
 * `g` must be a live handle, `out_c` writable, and `ordering` null or
 * writable for `ordering_len` entries.
 */
enum CcStatus cc_weak_closure(const struct CcGraph *g,
                              uint32_t *out_c,
                              uint32_t *ordering,
                              size_t ordering_len);

/**
 * Greedy A-bound.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum CcStatus cc_a_bound(const struct CcGraph *g, double *out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum CcStatus cc_count_maximal_cliques(const struct CcGraph *g,
                                       enum CcAlgorithm algorithm,
                                       uint64_t *out);

/**
 * All maximal cliques, canonically ordered, computed over the weak-closure
 * ordering.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum CcStatus cc_cliques_exact(const struct CcGraph *g, struct CcCliqueSet **out);

/**
 * Number of cliques, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t cc_clique_set_len(const struct CcCliqueSet *s);

/**
 * Borrows clique `index` as an ascending array of internal ids. The
 * array lives as long as the set.
 *
 * # Safety
 * `s` must be a live handle; `members` and `len` must be writable.
 */
enum CcStatus cc_clique_set_get(const struct CcCliqueSet *s,
                                size_t index,
                                const uint32_t **members,
                                size_t *len);

/**
 * Releases a clique set. Null is ignored.
 *
 * # Safety
 * `s` must be null or a handle not yet freed.
 */
void cc_clique_set_free(struct CcCliqueSet *s);

/**
 * Evaluates every bound; with `skip_count` the exact count is not
 * computed and `count_available` is false.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum CcStatus cc_bounds(const struct CcGraph *g, bool skip_count, struct CcBounds *out);

/**
 * `log10(3^((c-1)/3) * n^2)`; NaN unless `n >= 1` and `c >= 1`.
 */
double cc_bound_init_log10(uint64_t n, uint32_t c);

/**
 * `log10(4^((c+4)(c-1)/2) * n^(2-2^(1-c)))`; NaN unless `n >= 1` and `c >= 1`.
 */
double cc_bound_improved_log10(uint64_t n, uint32_t c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CCLOSED_H */
