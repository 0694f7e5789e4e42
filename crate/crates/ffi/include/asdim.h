#ifndef ASDIM_H
#define ASDIM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AsdimStatus {
  AsdimStatus_Ok = 0,
  AsdimStatus_NullPointer = 1,
  AsdimStatus_InvalidUtf8 = 2,
  AsdimStatus_InvalidInput = 3,
  AsdimStatus_Panic = 4,
} AsdimStatus;

/**
 * A cover of some graph.
 */
typedef struct AsdimCover AsdimCover;

/**
 * A graph loaded from JSON.
 */
typedef struct AsdimGraph AsdimGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *asdim_last_error(void);

/**
 * Parses graph JSON `{"n":..,"edges":[[u,v],..],"weights":[..]?}`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum AsdimStatus asdim_graph_from_json(const char *json, struct AsdimGraph **out);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
uintptr_t asdim_graph_vertex_count(const struct AsdimGraph *graph);

/**
 * # Safety
 * `graph` must be null or a handle not yet freed.
 */
void asdim_graph_free(struct AsdimGraph *graph);

/**
 * Cactus cover at scale `m` around `base`.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum AsdimStatus asdim_cactus_cover(const struct AsdimGraph *graph,
                                    uint32_t base,
                                    double m,
                                    struct AsdimCover **out);

/**
 * Coarse-cactus cover at scale `m` with fatness parameter `big_m`.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum AsdimStatus asdim_coarse_cactus_cover(const struct AsdimGraph *graph,
                                           uint32_t base,
                                           double m,
                                           double big_m,
                                           struct AsdimCover **out);

/**
 * Planar-pipeline cover for ball radius `rho`.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum AsdimStatus asdim_planar_cover(const struct AsdimGraph *graph,
                                    uint32_t base,
                                    double rho,
                                    struct AsdimCover **out);

/**
 * Parses cover JSON as written by `asdim_cover_to_json`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum AsdimStatus asdim_cover_from_json(const char *json, struct AsdimCover **out);

/**
 * Number of sets, or 0 for a null handle.
 *
 * # Safety
 * `cover` must be null or a live handle.
 */
uintptr_t asdim_cover_len(const struct AsdimCover *cover);

/**
 * Writes the cover's JSON to `*out`; release it with `asdim_string_free`.
 *
 * # Safety
 * `cover` must be a live handle; `out` must be writable.
 */
enum AsdimStatus asdim_cover_to_json(const struct AsdimCover *cover, char **out);

/**
 * # Safety
 * `cover` must be null or a handle not yet freed.
 */
void asdim_cover_free(struct AsdimCover *cover);

/**
 * Verifies `cover` on `graph` exactly. A negative bound means "use the
 * bound recorded in the cover". Sets `*passed` to 1 or 0 and, if
 * `report_json` is not null, stores the full report there.
 *
 * # Safety
 * Handles must be live; `passed` must be writable; `report_json` may be null.
 */
enum AsdimStatus asdim_verify_cover(const struct AsdimGraph *graph,
                                    const struct AsdimCover *cover,
                                    double diameter_bound,
                                    double radius,
                                    int64_t multiplicity_bound,
                                    int32_t *passed,
                                    char **report_json);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void asdim_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ASDIM_H */
