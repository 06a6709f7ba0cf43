#ifndef XIGRAPH_H
#define XIGRAPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Use the family's usual conjugation.
#define XI_CONJ_DEFAULT -1

// `diag(1, -1)`.
#define XI_CONJ_STD 0

// `[[0, 1], [1, 0]]`.
#define XI_CONJ_INV 1

// Status codes. The nonzero values follow the command-line exit codes
// where they overlap.
typedef enum XiStatus {
  XI_STATUS_OK = 0,
  XI_STATUS_INVALID_ARGUMENT = 2,
  XI_STATUS_BUDGET = 3,
  XI_STATUS_INVARIANT = 4,
  XI_STATUS_NULL_POINTER = 5,
  XI_STATUS_INTERNAL = 6,
} XiStatus;

// A computed graph. Opaque to C.
typedef struct XiGraph XiGraph;

typedef struct XiCounts {
  uint64_t components;
  uint64_t parabolic;
  uint64_t elliptic;
  uint64_t edges;
} XiCounts;

typedef struct XiPrediction {
  uint64_t components;
  uint64_t cusps;
  uint64_t elliptic;
} XiPrediction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Compute the graph for a named family (`full`, `gamma`, `gamma-minus`,
// `gamma1`, `gamma0`, `split`) at `level`. `conjugation` is one of the
// `XI_CONJ_*` constants.
//
// # Safety
// `family` must be a nul-terminated string; `out` must be writable.
enum XiStatus xi_compute(const char *family,
                         uint32_t level,
                         int32_t conjugation,
                         struct XiGraph **out);

// Compute the graph for a custom group given as JSON:
// `{"level": N, "conjugation": "std" | "inv" | [[a,b],[c,d]], "generators": [...]}`.
// `budget` caps the closure size; 0 selects the default.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum XiStatus xi_from_group_json(const char *json, size_t budget, struct XiGraph **out);

// Component, vertex and edge counts.
//
// # Safety
// `graph` must come from this library; `out` must be writable.
enum XiStatus xi_graph_counts(const struct XiGraph *graph, struct XiCounts *out);

// The graph as a JSON document. Free with [`xi_string_free`].
//
// # Safety
// `graph` must come from this library; `out` must be writable.
enum XiStatus xi_graph_to_json(const struct XiGraph *graph, char **out);

// The graph in Graphviz DOT. Free with [`xi_string_free`].
//
// # Safety
// `graph` must come from this library; `out` must be writable.
enum XiStatus xi_graph_to_dot(const struct XiGraph *graph, char **out);

// A short text summary of the cycles. Free with [`xi_string_free`].
//
// # Safety
// `graph` must come from this library; `out` must be writable.
enum XiStatus xi_graph_to_text(const struct XiGraph *graph, char **out);

// Genus of the curve for a named family at `level`.
//
// # Safety
// `family` must be a nul-terminated string; `out` must be writable.
enum XiStatus xi_genus(const char *family, uint32_t level, uint64_t *out);

// Closed-form counts for families that have one (not `split`).
//
// # Safety
// `family` must be a nul-terminated string; `out` must be writable.
enum XiStatus xi_predict(const char *family, uint32_t level, struct XiPrediction *out);

// Release a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void xi_string_free(char *s);

// Release a graph. Null is ignored.
//
// # Safety
// `graph` must be null or a handle returned by this library, not yet freed.
void xi_graph_free(struct XiGraph *graph);

// Message for the most recent failure on this thread, or null. The pointer
// stays valid until the next call into this library on the same thread.
const char *xi_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* XIGRAPH_H */
