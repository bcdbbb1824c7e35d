#ifndef INTERVAL_DPS_H
#define INTERVAL_DPS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum IdpsStatus {
  IdpsStatus_Ok = 0,
  IdpsStatus_NullPointer = 1,
  IdpsStatus_InvalidArgument = 2,
  IdpsStatus_InvalidInstance = 3,
  IdpsStatus_Disconnected = 4,
  IdpsStatus_BudgetExceeded = 5,
  IdpsStatus_BufferTooSmall = 6,
  IdpsStatus_Internal = 7,
  IdpsStatus_Panic = 8,
} IdpsStatus;

/**
 * Interval graph with terminals.
 */
typedef struct IdpsInstance IdpsInstance;

/**
 * Subgraph of an instance.
 */
typedef struct IdpsSubgraph IdpsSubgraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *idps_last_error(void);

/**
 * Builds an instance from `n` intervals. `coords` holds four integers per
 * interval: left numerator, left denominator, right numerator, right
 * denominator. `terminal[i]` is nonzero for terminals.
 *
 * # Safety
 * `coords` must point to `4 * n` values and `terminal` to `n` bytes.
 */
enum IdpsStatus idps_instance_new(const int64_t *coords,
                                  const uint8_t *terminal,
                                  size_t n,
                                  struct IdpsInstance **out);

/**
 * Seeded random instance; `flavor` 0 is general, 1 is unit/point.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum IdpsStatus idps_instance_random(size_t n,
                                     size_t k,
                                     uint64_t seed,
                                     uint32_t flavor,
                                     struct IdpsInstance **out);

/**
 * Parses the JSON instance schema.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum IdpsStatus idps_instance_from_json(const char *json, struct IdpsInstance **out);

/**
 * Serializes an instance; free the string with [`idps_string_free`].
 *
 * # Safety
 * `g` must come from this library and `out` must be a valid pointer.
 */
enum IdpsStatus idps_instance_to_json(const struct IdpsInstance *g, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void idps_string_free(char *s);

/**
 * # Safety
 * `g` must be null or a handle returned by this library, freed once.
 */
void idps_instance_free(struct IdpsInstance *g);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t idps_instance_len(const struct IdpsInstance *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t idps_instance_terminal_count(const struct IdpsInstance *g);

/**
 * Shortest-path distance between canonical vertices `u` and `v`; writes
 * -1 when they are disconnected.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum IdpsStatus idps_distance(const struct IdpsInstance *g, size_t u, size_t v, int64_t *out);

/**
 * Subgraph keeping every terminal distance within +1.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum IdpsStatus idps_build_das(const struct IdpsInstance *g, struct IdpsSubgraph **out);

/**
 * Subgraph keeping every terminal distance exactly.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum IdpsStatus idps_build_dps(const struct IdpsInstance *g, struct IdpsSubgraph **out);

/**
 * # Safety
 * `h` must be null or a handle returned by this library, freed once.
 */
void idps_subgraph_free(struct IdpsSubgraph *h);

/**
 * # Safety
 * `h` must be null or a live handle.
 */
size_t idps_subgraph_edge_count(const struct IdpsSubgraph *h);

/**
 * Vertices of degree at least three, terminals included.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t idps_subgraph_branching_vertices(const struct IdpsSubgraph *h);

/**
 * Copies edges as `(u, v)` pairs into `buf` (two entries per edge).
 * `written` receives the number of edges; if `capacity` edges do not fit
 * nothing is copied and `BufferTooSmall` is returned.
 *
 * # Safety
 * `buf` must have room for `2 * capacity` values; `written` must be valid.
 */
enum IdpsStatus idps_subgraph_edges(const struct IdpsSubgraph *h,
                                    size_t *buf,
                                    size_t capacity,
                                    size_t *written);

/**
 * Checks `d_G <= d_H <= d_G + slack` on every terminal pair.
 *
 * # Safety
 * Handles must be live and `ok` a valid pointer.
 */
enum IdpsStatus idps_verify(const struct IdpsInstance *g,
                            const struct IdpsSubgraph *h,
                            uint32_t slack,
                            bool *ok);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INTERVAL_DPS_H */
