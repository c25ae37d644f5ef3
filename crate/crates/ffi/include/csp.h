#ifndef CSP_H
#define CSP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CspStatus {
  CSP_STATUS_OK = 0,
  CSP_STATUS_NULL_POINTER = 1,
  CSP_STATUS_EMPTY_GRAPH = 2,
  CSP_STATUS_SHAPE = 3,
  CSP_STATUS_INVALID_CONFIG = 4,
  CSP_STATUS_DEGENERATE_LABELS = 5,
  CSP_STATUS_MISSING_CLASS = 6,
  CSP_STATUS_IO = 7,
  CSP_STATUS_PARSE = 8,
  CSP_STATUS_UNKNOWN_NODE = 9,
  CSP_STATUS_PANIC = 99,
} CspStatus;

typedef enum CspVariant {
  CSP_VARIANT_ROW = 0,
  CSP_VARIANT_COLUMN = 1,
  CSP_VARIANT_SYMMETRIC = 2,
  CSP_VARIANT_ALPHA = 3,
} CspVariant;

/**
 * Opaque hypergraph handle.
 */
typedef struct CspHypergraph CspHypergraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Owned by the
 * library; valid until the next failing call on the same thread.
 */
const char *csp_last_error_message(void);

/**
 * Build a hypergraph from `n_pairs` dense `(nodes[k], edges[k])` incidences.
 *
 * # Safety
 * `nodes` and `edges` must point to `n_pairs` readable `uint32_t` each and
 * `out` must be writable.
 */
enum CspStatus csp_hypergraph_from_pairs(size_t n_nodes,
                                         size_t n_edges,
                                         const uint32_t *nodes,
                                         const uint32_t *edges,
                                         size_t n_pairs,
                                         struct CspHypergraph **out);

/**
 * Load a `nodeId,edgeId` incidence file. `universe_path` may be NULL; when
 * set, its `nodeId` column adds isolated nodes.
 *
 * # Safety
 * `incidence_path` (and `universe_path` if non-null) must be NUL-terminated
 * strings; `out` must be writable.
 */
enum CspStatus csp_hypergraph_load(const char *incidence_path,
                                   const char *universe_path,
                                   struct CspHypergraph **out);

/**
 * Release a handle. NULL is ignored.
 *
 * # Safety
 * `h` must come from a `csp_hypergraph_*` constructor and not be freed twice.
 */
void csp_hypergraph_free(struct CspHypergraph *h);

/**
 * # Safety
 * `h` must be a live handle or NULL (returns 0).
 */
size_t csp_hypergraph_n_nodes(const struct CspHypergraph *h);

/**
 * # Safety
 * `h` must be a live handle or NULL (returns 0).
 */
size_t csp_hypergraph_n_edges(const struct CspHypergraph *h);

/**
 * # Safety
 * `h` must be a live handle or NULL (returns 0).
 */
size_t csp_hypergraph_nnz(const struct CspHypergraph *h);

/**
 * Write all node degrees into `out[0..n_nodes]`.
 *
 * # Safety
 * `out` must have room for `csp_hypergraph_n_nodes(h)` values.
 */
enum CspStatus csp_hypergraph_node_degrees(const struct CspHypergraph *h, size_t *out);

/**
 * Dense index of an external node identifier of a loaded hypergraph.
 *
 * # Safety
 * `id` must be NUL-terminated; `out` writable.
 */
enum CspStatus csp_hypergraph_node_index(const struct CspHypergraph *h,
                                         const char *id,
                                         size_t *out);

/**
 * Run `layers` CSP layers on the column-major `n_rows × n_cols` signal `x`,
 * writing the result to `out` (same shape; may not alias `x`). `alpha` is
 * read only by `CSP_VARIANT_ALPHA`.
 *
 * # Safety
 * `x` and `out` must each hold `n_rows * n_cols` doubles.
 */
enum CspStatus csp_propagate(const struct CspHypergraph *h,
                             enum CspVariant variant,
                             size_t layers,
                             double alpha,
                             const double *x,
                             size_t n_rows,
                             size_t n_cols,
                             double *out);

/**
 * Naive Bayes positive-class log-odds: fit on `train_nodes` with 0/1
 * `train_labels`, score `score_nodes` into `out`.
 *
 * # Safety
 * Array arguments must hold the stated number of elements.
 */
enum CspStatus csp_naive_bayes_scores(const struct CspHypergraph *h,
                                      const size_t *train_nodes,
                                      const uint8_t *train_labels,
                                      size_t n_train,
                                      double smoothing,
                                      const size_t *score_nodes,
                                      size_t n_score,
                                      double *out);

/**
 * ROC-AUC of `scores` against 0/1 `labels`, ties worth ½.
 *
 * # Safety
 * `scores` and `labels` must hold `len` elements; `out` writable.
 */
enum CspStatus csp_roc_auc(const double *scores, const uint8_t *labels, size_t len, double *out);

/**
 * Precision among the `min(k, len)` highest scores, ties by lower index.
 *
 * # Safety
 * `scores` and `labels` must hold `len` elements; `out` writable.
 */
enum CspStatus csp_precision_at_k(const double *scores,
                                  const uint8_t *labels,
                                  size_t len,
                                  size_t k,
                                  double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CSP_H */
