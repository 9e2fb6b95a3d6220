/* Exercises the C interface from C. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "hilbert.h"

static int failures = 0;

#define CHECK(cond)                                                  \
    do {                                                             \
        if (!(cond)) {                                               \
            fprintf(stderr, "%s:%d: CHECK(%s) failed\n", __FILE__, __LINE__, #cond); \
            ++failures;                                              \
        }                                                            \
    } while (0)

static const char* const kSquare =
    "{\"polygon\": [[0,0],[1,0],[1,1],[0,1]],"
    " \"sites\": [{\"id\": \"a\", \"pos\": [0.25,0.5]}, {\"id\": \"b\", \"pos\": [0.75,0.5]}]}";

static const char* const kVertical =
    "{\"polygon\": [[0,0],[1,0],[1,1],[0,1]],"
    " \"sites\": [{\"id\": \"a\", \"pos\": [0.5,0.3]}, {\"id\": \"b\", \"pos\": [0.5,0.7]}]}";

static hv_scene* load(const char* text) {
    hv_scene* scene = NULL;
    CHECK(hv_scene_parse(text, strlen(text), &scene) == HV_OK);
    return scene;
}

static void test_status(void) {
    CHECK(strcmp(hv_status_name(HV_OK), "Ok") == 0);
    CHECK(strcmp(hv_status_name(HV_UNKNOWN_SITE), "UnknownSite") == 0);
    CHECK(strcmp(hv_status_name(HV_INTERNAL), "Internal") == 0);
    CHECK(hv_status_exit_code(HV_OK) == 0);
    CHECK(hv_status_exit_code(HV_UNKNOWN_SITE) == 2);
    CHECK(hv_status_exit_code(HV_PARSE) == 2);
    CHECK(hv_status_exit_code(HV_IO) == 2);
    CHECK(hv_status_exit_code(HV_DEGENERATE_PAIR) == 3);
    CHECK(hv_status_exit_code(HV_INTERNAL) == 1);
    CHECK(strlen(hv_version()) > 0);
}

static void test_queries(void) {
    hv_scene* scene = load(kSquare);
    CHECK(hv_scene_site_count(scene) == 2);
    double x = 0, y = 0;
    CHECK(hv_scene_site_position(scene, "b", &x, &y) == HV_OK);
    CHECK(x == 0.75 && y == 0.5);

    double d = 0;
    CHECK(hv_distance(scene, "a", "b", &d) == HV_OK);
    CHECK(fabs(d - log(3.0)) <= 1e-12);
    CHECK(hv_distance(scene, "a", "a", &d) == HV_OK);
    CHECK(d == 0.0);
    CHECK(hv_distance(scene, "a", "zz", &d) == HV_UNKNOWN_SITE);
    CHECK(strstr(hv_last_error(), "unknown site") != NULL);
    CHECK(hv_distance(scene, "a", "b", &d) == HV_OK);
    CHECK(strcmp(hv_last_error(), "") == 0);
    CHECK(hv_distance(NULL, "a", "b", &d) == HV_INVALID_ARGUMENT);

    hv_string* out = NULL;
    CHECK(hv_ball(scene, "a", log(3.0), &out) == HV_OK);
    CHECK(strstr(hv_string_data(out), "\"max_residual\"") != NULL);
    hv_string_free(out);
    CHECK(hv_ball(scene, "a", 0.0, &out) == HV_INVALID_ARGUMENT);
    CHECK(out == NULL);

    CHECK(hv_bisector(scene, "a", "b", &out) == HV_OK);
    CHECK(strstr(hv_string_data(out), "\"conic\"") != NULL);
    hv_string_free(out);

    CHECK(hv_events(scene, "a", 0.25, 0.5, 0.25, 0.6, "b", &out) == HV_OK);
    CHECK(strstr(hv_string_data(out), "\"events\"") != NULL);
    hv_string_free(out);
    hv_scene_free(scene);

    scene = load(kVertical);
    CHECK(hv_bisector(scene, "a", "b", &out) == HV_DEGENERATE_PAIR);
    CHECK(out != NULL);
    CHECK(strstr(hv_string_data(out), "\"tie_assignment\": \"a\"") != NULL);
    hv_string_free(out);
    CHECK(hv_zregion(scene, "a", "b", &out) == HV_DEGENERATE_PAIR);
    hv_scene_free(scene);
}

static void test_diagram(void) {
    hv_scene* scene = load(kSquare);
    hv_diagram* diagram = NULL;
    CHECK(hv_diagram_build(scene, &diagram) == HV_OK);
    CHECK(hv_diagram_cell_count(diagram) == 2);
    CHECK(hv_diagram_degeneracy_count(diagram) == 0);

    hv_string* dump = NULL;
    CHECK(hv_diagram_dump(diagram, &dump) == HV_OK);
    hv_string* again = NULL;
    CHECK(hv_dump_normalize(hv_string_data(dump), hv_string_size(dump), &again) == HV_OK);
    CHECK(strcmp(hv_string_data(dump), hv_string_data(again)) == 0);
    hv_string_free(again);
    hv_string_free(dump);
    CHECK(hv_dump_normalize("{}", 2, &again) == HV_PARSE);

    hv_string* svg1 = NULL;
    hv_string* svg2 = NULL;
    CHECK(hv_diagram_svg(diagram, &svg1) == HV_OK);
    CHECK(hv_diagram_svg(diagram, &svg2) == HV_OK);
    CHECK(strcmp(hv_string_data(svg1), hv_string_data(svg2)) == 0);
    hv_string_free(svg1);
    hv_string_free(svg2);

    hv_string* id = NULL;
    CHECK(hv_diagram_nearest(diagram, 0.9, 0.1, &id) == HV_OK);
    CHECK(strcmp(hv_string_data(id), "b") == 0);
    hv_string_free(id);

    size_t samples = 0, skipped = 0, mismatches = 1;
    CHECK(hv_diagram_grid_check(diagram, 32, &samples, &skipped, &mismatches) == HV_OK);
    CHECK(samples == 32 * 32);
    CHECK(mismatches == 0);
    hv_diagram_free(diagram);
    hv_scene_free(scene);

    const char* bad = "{\"polygon\": [[0,0],[1,0],[2,0]], \"sites\": []}";
    scene = load(bad);
    CHECK(hv_diagram_build(scene, &diagram) == HV_INVALID_POLYGON);
    CHECK(diagram == NULL);
    hv_scene_free(scene);

    CHECK(hv_scene_parse("{", 1, &scene) == HV_PARSE);
    CHECK(scene == NULL);
    CHECK(hv_scene_read_file("/nonexistent/scene.json", &scene) == HV_IO);
}

static void test_session(void) {
    hv_session* session = NULL;
    CHECK(hv_session_new(0, &session) == HV_OK);
    char request[512];
    snprintf(request, sizeof request, "{\"version\": 1, \"request\": \"load_scene\", \"payload\": {\"scene\": %s}}", kSquare);
    hv_string* out = NULL;
    CHECK(hv_session_handle(session, request, strlen(request), &out) == HV_OK);
    CHECK(strstr(hv_string_data(out), "\"ok\":true") != NULL);
    CHECK(strstr(hv_string_data(out), "\"snapshot\":1") != NULL);
    hv_string_free(out);
    const char* bad = "{\"version\": 1, \"request\": \"query_distance\", \"payload\": {\"from\": \"a\", \"to\": \"q\"}}";
    CHECK(hv_session_handle(session, bad, strlen(bad), &out) == HV_OK);
    CHECK(strstr(hv_string_data(out), "\"exit_code\":2") != NULL);
    hv_string_free(out);
    hv_session_free(session);
}

int main(void) {
    test_status();
    test_queries();
    test_diagram();
    test_session();
    hv_scene_free(NULL);
    hv_diagram_free(NULL);
    hv_string_free(NULL);
    hv_session_free(NULL);
    if (failures) {
        fprintf(stderr, "%d checks failed\n", failures);
        return 1;
    }
    printf("all C interface checks passed\n");
    return 0;
}
