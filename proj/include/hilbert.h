#ifndef HILBERT_H
#define HILBERT_H

/* C interface to the Hilbert-metric Voronoi library.
 *
 * Every fallible call returns an hv_status; on failure the message is
 * available from hv_last_error() on the calling thread until its next call.
 * Objects are opaque and owned by the caller; free them with the matching
 * *_free function (NULL is accepted). Strings returned through hv_string
 * are UTF-8 JSON or SVG text.
 */

#include <stddef.h>

#if defined(_WIN32)
#define HV_API __declspec(dllexport)
#else
#define HV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hv_status {
    HV_OK = 0,
    HV_INVALID_ARGUMENT,
    HV_INVALID_POLYGON,
    HV_COINCIDENT_LINES,
    HV_COINCIDENT_POINTS,
    HV_NOT_COLLINEAR,
    HV_DEGENERATE_QUAD,
    HV_DEGENERATE_TRIANGLE,
    HV_IMAGE_AT_INFINITY,
    HV_POINT_NOT_INTERIOR,
    HV_POINTS_COINCIDE,
    HV_SITE_ON_EDGE_LINE,
    HV_SITE_OUTSIDE_FRAME,
    HV_NOT_DEGENERATE,
    HV_DEGENERATE_PAIR,
    HV_DUPLICATE_SITE,
    HV_SITE_COINCIDENT,
    HV_SITE_TOO_CLOSE_TO_BOUNDARY,
    HV_UNKNOWN_SITE,
    HV_EMPTY_DIAGRAM,
    HV_UNKNOWN_SNAPSHOT,
    HV_PARSE,
    HV_INTERNAL,
    HV_IO
} hv_status;

typedef struct hv_string hv_string;
typedef struct hv_scene hv_scene;
typedef struct hv_diagram hv_diagram;
typedef struct hv_session hv_session;

/* Library version, e.g. "1.0.0". */
HV_API const char* hv_version(void);
/* Message of the last failure on this thread; "" after a success. */
HV_API const char* hv_last_error(void);
/* Stable name such as "UnknownSite". */
HV_API const char* hv_status_name(hv_status status);
/* Process exit code: 0 success, 2 input error, 3 degeneracy, 1 otherwise. */
HV_API int hv_status_exit_code(hv_status status);

HV_API const char* hv_string_data(const hv_string* s);
HV_API size_t hv_string_size(const hv_string* s);
HV_API void hv_string_free(hv_string* s);

/* Scenes: a convex polygon and named sites. Parsing checks the JSON shape
 * only; geometry is validated when a diagram is built. */
HV_API hv_status hv_scene_parse(const char* json, size_t len, hv_scene** out);
HV_API hv_status hv_scene_read_file(const char* path, hv_scene** out);
HV_API void hv_scene_free(hv_scene* scene);
HV_API size_t hv_scene_site_count(const hv_scene* scene);
HV_API hv_status hv_scene_site_position(const hv_scene* scene, const char* id, double* x, double* y);

/* Queries on a scene; JSON results are written to *out. */
HV_API hv_status hv_distance(const hv_scene* scene, const char* from, const char* to, double* out);
/* Ball vertices plus "max_residual", the largest |H(center, v) - r|. */
HV_API hv_status hv_ball(const hv_scene* scene, const char* site, double r, hv_string** out);
/* Bisector pieces with conic coefficients, sector labels and residuals.
 * A degenerate pair returns HV_DEGENERATE_PAIR and the report in *out. */
HV_API hv_status hv_bisector(const hv_scene* scene, const char* a, const char* b, hv_string** out);
HV_API hv_status hv_zregion(const hv_scene* scene, const char* a, const char* b, hv_string** out);
HV_API hv_status hv_events(const hv_scene* scene, const char* moving, double x0, double y0, double x1, double y1,
                           const char* other, hv_string** out);

/* Diagrams. */
HV_API hv_status hv_diagram_build(const hv_scene* scene, hv_diagram** out);
HV_API void hv_diagram_free(hv_diagram* diagram);
HV_API size_t hv_diagram_cell_count(const hv_diagram* diagram);
HV_API size_t hv_diagram_degeneracy_count(const hv_diagram* diagram);
HV_API hv_status hv_diagram_dump(const hv_diagram* diagram, hv_string** out);
HV_API hv_status hv_diagram_svg(const hv_diagram* diagram, hv_string** out);
HV_API hv_status hv_diagram_nearest(const hv_diagram* diagram, double x, double y, hv_string** out);
/* Compares cell membership with a brute-force nearest-site search on an
 * n-by-n grid, skipping samples near cell boundaries. */
HV_API hv_status hv_diagram_grid_check(const hv_diagram* diagram, size_t n, size_t* samples, size_t* skipped,
                                       size_t* mismatches);
/* Parses a diagram dump and writes it back; fails with HV_PARSE. */
HV_API hv_status hv_dump_normalize(const char* json, size_t len, hv_string** out);

/* Protocol sessions: one JSON request in, one JSON response out. */
HV_API hv_status hv_session_new(size_t capacity, hv_session** out);
HV_API void hv_session_free(hv_session* session);
HV_API hv_status hv_session_handle(hv_session* session, const char* request, size_t len, hv_string** out);

#ifdef __cplusplus
}
#endif

#endif
