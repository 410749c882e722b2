#ifndef GRASSMANN_H
#define GRASSMANN_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes.
typedef enum GqStatus {
  GQ_STATUS_OK = 0,
  GQ_STATUS_NULL_POINTER = 1,
  GQ_STATUS_INVALID_ARGUMENT = 2,
  GQ_STATUS_NOT_PRIME_POWER = 3,
  GQ_STATUS_TOO_LARGE = 4,
  GQ_STATUS_PARSE = 5,
  GQ_STATUS_IO = 6,
  GQ_STATUS_NOT_DISTANCE_REGULAR = 7,
  GQ_STATUS_INFEASIBLE = 8,
  GQ_STATUS_UTF8 = 9,
  GQ_STATUS_INTERNAL = 10,
} GqStatus;

// Opaque graph handle.
typedef struct GqGraph GqGraph;

// Opaque recognition report handle.
typedef struct GqRecognition GqRecognition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *gq_version(void);

// Copy of the last error message on this thread, or null if the last call
// succeeded. Release with [`gq_string_free`].
char *gq_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void gq_string_free(char *s);

// `[j]_q = 1 + q + ... + q^(j-1)` as a decimal string.
//
// # Safety
// `out` must be valid for writes.
enum GqStatus gq_bracket(uint32_t j, uint64_t q, char **out);

// Gaussian binomial `[n m]_q` as a decimal string.
//
// # Safety
// `out` must be valid for writes.
enum GqStatus gq_gaussian_binomial(uint32_t n, uint32_t m, uint64_t q, char **out);

// Smallest diameter covered by the characterization for this `q`.
//
// # Safety
// `out` must be valid for writes.
enum GqStatus gq_chi(uint64_t q, uint32_t *out);

// Parameter report for `J_q(n, D)` as JSON lines, one record per check.
//
// # Safety
// `out` must be valid for writes.
enum GqStatus gq_params_json(uint32_t n, uint32_t d, uint64_t q, char **out);

// The Grassmann graph `J_q(n, D)`.
//
// # Safety
// `out` must be valid for writes.
enum GqStatus gq_graph_grassmann(uint32_t n, uint32_t d, uint64_t q, struct GqGraph **out);

// The `(s x t)`-grid.
//
// # Safety
// `out` must be valid for writes.
enum GqStatus gq_graph_grid(size_t s, size_t t, struct GqGraph **out);

// The Shrikhande graph.
//
// # Safety
// `out` must be valid for writes.
enum GqStatus gq_graph_shrikhande(struct GqGraph **out);

// The q-clique extension of `g`.
//
// # Safety
// `g` must be a live graph handle and `out` valid for writes.
enum GqStatus gq_graph_clique_extension(const struct GqGraph *g, size_t q, struct GqGraph **out);

// Subgraph induced on the neighbours of `x`.
//
// # Safety
// `g` must be a live graph handle and `out` valid for writes.
enum GqStatus gq_graph_local(const struct GqGraph *g, size_t x, struct GqGraph **out);

// Reads an edge-list file.
//
// # Safety
// `path` must be a NUL-terminated string and `out` valid for writes.
enum GqStatus gq_graph_read(const char *path, struct GqGraph **out);

// Writes `g` as an edge-list file.
//
// # Safety
// `g` must be a live graph handle and `path` a NUL-terminated string.
enum GqStatus gq_graph_write(const struct GqGraph *g, const char *path);

// Releases a graph. Null is ignored.
//
// # Safety
// `g` must come from this library and not have been freed.
void gq_graph_free(struct GqGraph *g);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live graph handle.
size_t gq_graph_vertex_count(const struct GqGraph *g);

// Number of edges, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live graph handle.
size_t gq_graph_edge_count(const struct GqGraph *g);

// Label-sensitive 64-bit digest of the adjacency, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live graph handle.
uint64_t gq_graph_digest(const struct GqGraph *g);

// Writes the `n x n` 0/1 adjacency matrix, row-major, into `buf`.
//
// # Safety
// `g` must be a live graph handle and `buf` valid for `len` bytes.
enum GqStatus gq_graph_adjacency(const struct GqGraph *g, uint8_t *buf, size_t len);

// Exact check that `g` has spectrum `{(thetas[i], mults[i])}`.
//
// # Safety
// `g` must be a live graph handle, `thetas` and `mults` valid for `len`
// reads, and `passed` valid for writes.
enum GqStatus gq_verify_spectrum(const struct GqGraph *g,
                                 const int64_t *thetas,
                                 const int64_t *mults,
                                 size_t len,
                                 bool *passed);

// Runs recognition of `g` as the q-clique extension of the `(r x r)`-grid.
//
// # Safety
// `g` must be a live graph handle and `out` valid for writes.
enum GqStatus gq_recognize(const struct GqGraph *g,
                           size_t q,
                           size_t r,
                           bool spectral_precheck,
                           struct GqRecognition **out);

// Whether the report accepts the graph; false for a null handle.
//
// # Safety
// `rec` must be null or a live report handle.
bool gq_recognition_accepted(const struct GqRecognition *rec);

// The report as `key=value` lines. Release with [`gq_string_free`].
//
// # Safety
// `rec` must be null or a live report handle.
char *gq_recognition_to_kv(const struct GqRecognition *rec);

// Releases a report. Null is ignored.
//
// # Safety
// `rec` must come from this library and not have been freed.
void gq_recognition_free(struct GqRecognition *rec);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GRASSMANN_H */
