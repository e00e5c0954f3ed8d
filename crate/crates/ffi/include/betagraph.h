#ifndef BETAGRAPH_H
#define BETAGRAPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Written into a mate array for an unmatched vertex.
 */
#define BG_UNMATCHED -1

typedef enum {
  BG_STATUS_OK = 0,
  BG_STATUS_NULL_POINTER = 1,
  BG_STATUS_INVALID_INPUT = 2,
  BG_STATUS_OUT_OF_RANGE = 3,
  BG_STATUS_PARSE = 4,
  BG_STATUS_IO = 5,
  /**
   * Instance too large for an exact oracle.
   */
  BG_STATUS_CAPACITY = 6,
  BG_STATUS_BUFFER_TOO_SMALL = 7,
  BG_STATUS_INTERNAL = 8,
  BG_STATUS_PANIC = 9,
} BgStatus;

/**
 * Opaque graph handle.
 */
typedef struct BgGraph BgGraph;

typedef struct {
  size_t size;
  uint64_t marks_set;
  uint64_t vertices_scanned;
  uint64_t work;
  uint64_t neighbor_probes;
} BgMisStats;

typedef struct {
  size_t matching_size;
  uint64_t iterations;
  uint64_t low_degree_scans;
  uint64_t successes;
  /**
   * Guess rounds used; 1 when β was supplied.
   */
  uint32_t rounds;
  uint64_t probes;
  bool completed;
} BgMmStats;

typedef struct {
  uint64_t queries;
  uint64_t budget;
  bool refuted;
  /**
   * Paid more than the budget, or was refuted.
   */
  bool lower_bound_respected;
} BgDuel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static, NUL-terminated name of a status code.
 */
const char *bg_status_name(BgStatus status);

/**
 * Copies the calling thread's last error message into `buf` (truncated,
 * always NUL-terminated when `len > 0`). Returns the full message length
 * plus one, or 0 if no error has been recorded.
 */
size_t bg_last_error(char *buf, size_t len);

/**
 * Builds a graph on `n` vertices from `m` edges given as `2·m` endpoint ids.
 * Duplicate edges are merged; self-loops are rejected.
 */
BgStatus bg_graph_from_edges(size_t n, const uint32_t *endpoints, size_t m, BgGraph **out);

/**
 * Reads a graph file (`n m` header, then one `u v` line per edge).
 */
BgStatus bg_graph_read(const char *path, BgGraph **out);

/**
 * Writes the graph in the text format read by `bg_graph_read`.
 */
BgStatus bg_graph_write(const BgGraph *g, const char *path);

/**
 * Generates a member of a named family (`line_graph`, `clique_minus_pm`,
 * `unit_disk`, ...) with default parameters. `clique_minus_pm` is kept
 * implicit, so large instances are cheap.
 */
BgStatus bg_graph_generate(const char *family, size_t n, uint64_t seed, BgGraph **out);

/**
 * Releases a handle. Null is ignored.
 */
void bg_graph_free(BgGraph *g);

/**
 * Vertex count, or 0 for a null handle.
 */
size_t bg_graph_vertex_count(const BgGraph *g);

/**
 * Edge count, or 0 for a null handle.
 */
uint64_t bg_graph_edge_count(const BgGraph *g);

BgStatus bg_graph_degree(const BgGraph *g, size_t v, size_t *out);

/**
 * Entry `i` of `v`'s adjacency array.
 */
BgStatus bg_graph_neighbor(const BgGraph *g, size_t v, size_t i, size_t *out);

/**
 * Exact neighborhood independence number. Fails with `Capacity` on graphs
 * with a vertex of degree above 25.
 */
BgStatus bg_beta_exact(const BgGraph *g, size_t *out);

/**
 * Greedy maximal independent set. `order` may be null (identity order);
 * otherwise it must be a permutation of `0..n` of length `order_len`.
 * `in_set[v]` is set to 1 for members and 0 otherwise. `stats` may be null.
 */
BgStatus bg_mis_greedy(const BgGraph *g,
                       const size_t *order,
                       size_t order_len,
                       uint8_t *in_set,
                       size_t in_set_len,
                       BgMisStats *stats);

/**
 * Randomized greedy maximal matching. `beta = 0` runs the doubling wrapper
 * that needs no knowledge of β. `mate[v]` receives `v`'s partner or
 * `BG_UNMATCHED`. `stats` may be null.
 */
BgStatus bg_mm_randomized(const BgGraph *g,
                          size_t beta,
                          uint64_t seed,
                          int64_t *mate,
                          size_t mate_len,
                          BgMmStats *stats);

/**
 * Runs a named matching strategy (`greedy`, `exhaustive`, `empty`,
 * `budgeted-greedy`, `random-probe[:q]`) against the adaptive adversary on
 * `n = 10k` vertices. `random_choices` makes the adversary's arbitrary
 * choices seeded-random instead of lowest-id.
 */
BgStatus bg_adversary_duel(size_t k,
                           const char *strategy,
                           uint64_t seed,
                           bool random_choices,
                           BgDuel *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BETAGRAPH_H */
