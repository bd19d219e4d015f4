#ifndef TONNETZ_H
#define TONNETZ_H

/* Generated by cbindgen from tonnetz-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a C-ABI call.
 */
typedef enum TonnetzStatus {
  TONNETZ_STATUS_OK = 0,
  /**
   * A pointer argument was null.
   */
  TONNETZ_STATUS_NULL_ARGUMENT = 1,
  /**
   * An argument failed validation (bad enum value, bad UTF-8, ...).
   */
  TONNETZ_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The operation itself failed; see `tonnetz_last_error`.
   */
  TONNETZ_STATUS_DOMAIN_ERROR = 3,
} TonnetzStatus;

/**
 * Which network to build.
 */
typedef enum TonnetzNetwork {
  TONNETZ_NETWORK_EULERIAN = 0,
  TONNETZ_NETWORK_PENTATONIC = 1,
  TONNETZ_NETWORK_HEXACHORDAL = 2,
  TONNETZ_NETWORK_ARCHIMEDEAN_MAJOR = 3,
  TONNETZ_NETWORK_ARCHIMEDEAN_MINOR = 4,
} TonnetzNetwork;

/**
 * Opaque graph handle.
 */
typedef struct TonnetzGraph TonnetzGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. The pointer is
 * owned by the library and stays valid until the next failing call.
 */
const char *tonnetz_last_error(void);

/**
 * Frees a string returned by this library. Null is allowed.
 * # Safety
 * `text` must be null or a pointer previously returned by this library
 * and not freed yet.
 */
void tonnetz_string_free(char *text);

/**
 * Builds one of the five networks behind an opaque handle. The pentatonic
 * and hexachordal builds use their default labels (C D E G A and 1..6).
 * # Safety
 * `out_graph` must be null or a valid pointer to writable storage for one
 * pointer.
 */
enum TonnetzStatus tonnetz_graph_build(enum TonnetzNetwork network,
                                       struct TonnetzGraph **out_graph);

/**
 * Releases a graph handle. Null is allowed.
 * # Safety
 * `graph` must be null or a handle previously returned by
 * `tonnetz_graph_build` and not freed yet.
 */
void tonnetz_graph_free(struct TonnetzGraph *graph);

/**
 * # Safety
 * `graph` must be null or a live handle from `tonnetz_graph_build`.
 */
uint32_t tonnetz_graph_vertex_count(const struct TonnetzGraph *graph);

/**
 * # Safety
 * `graph` must be null or a live handle from `tonnetz_graph_build`.
 */
uint32_t tonnetz_graph_edge_count(const struct TonnetzGraph *graph);

/**
 * Girth of the graph, or -1 for a forest, or -2 on a null handle.
 * # Safety
 * `graph` must be null or a live handle from `tonnetz_graph_build`.
 */
int32_t tonnetz_graph_girth(const struct TonnetzGraph *graph);

/**
 * # Safety
 * `graph` must be null or a live handle from `tonnetz_graph_build`.
 */
uint32_t tonnetz_graph_component_count(const struct TonnetzGraph *graph);

/**
 * Graph JSON (vertices with labels and colors, edge list). Free with
 * `tonnetz_string_free`.
 * # Safety
 * `graph` must be null or a live handle; `out_json` must be null or point
 * to writable storage for one pointer.
 */
enum TonnetzStatus tonnetz_graph_to_json(const struct TonnetzGraph *graph, char **out_json);

/**
 * DOT rendering with the white/black bipartition. Free with
 * `tonnetz_string_free`.
 * # Safety
 * `graph` must be null or a live handle; `out_dot` must be null or point
 * to writable storage for one pointer.
 */
enum TonnetzStatus tonnetz_graph_to_dot(const struct TonnetzGraph *graph, char **out_dot);

/**
 * Cycle census of the Eulerian tonnetz up to `max_length` (at most 14), as
 * a JSON array of {length, parallel_count, count} rows.
 * # Safety
 * `out_json` must be null or point to writable storage for one pointer.
 */
enum TonnetzStatus tonnetz_census_json(uint32_t max_length, char **out_json);

/**
 * Validates a whitespace-separated chord progression against the Eulerian
 * tonnetz and returns the full report as JSON.
 * # Safety
 * `progression` must be null or a NUL-terminated string; `out_json` must
 * be null or point to writable storage for one pointer.
 */
enum TonnetzStatus tonnetz_analyze_progression_json(const char *progression, char **out_json);

/**
 * Generates the {4,6,12} tessellation patch for one Archimedean component
 * and returns it as JSON (`as_svg` false) or as an SVG document (`as_svg`
 * true).
 * # Safety
 * `out_text` must be null or point to writable storage for one pointer.
 */
enum TonnetzStatus tonnetz_tessellation(enum TonnetzNetwork network,
                                        uint32_t rings,
                                        bool as_svg,
                                        char **out_text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TONNETZ_H */
