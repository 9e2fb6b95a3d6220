#include "hilbert.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "hilbert/protocol.hpp"
#include "json_util.hpp"

using namespace hilbert;

struct hv_string {
    std::string text;
};

struct hv_scene {
    Scene scene;
};

struct hv_diagram {
    VoronoiDiagram diagram;
};

struct hv_session {
    ProtocolSession session;
};

namespace {

static_assert(static_cast<int>(ErrorCode::InvalidArgument) + 1 == HV_INVALID_ARGUMENT);
static_assert(static_cast<int>(ErrorCode::Internal) + 1 == HV_INTERNAL);

thread_local std::string last_error;

hv_status status_of(ErrorCode code) { return static_cast<hv_status>(static_cast<int>(code) + 1); }

hv_status failure(hv_status status, const std::string& message) {
    last_error = message;
    return status;
}

// Runs fn, translating exceptions into a status and the thread's message.
template <typename Fn>
hv_status guarded(Fn&& fn) {
    try {
        last_error.clear();
        return fn();
    } catch (const Error& e) {
        return failure(status_of(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return failure(HV_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return failure(HV_INTERNAL, e.what());
    }
}

hv_status require(const void* p, const char* what) {
    if (p == nullptr) return failure(HV_INVALID_ARGUMENT, std::string(what) + " is null");
    return HV_OK;
}

hv_string* make_string(std::string text) { return new hv_string{std::move(text)}; }

const Site& find_site(const Scene& scene, const char* id) {
    if (id == nullptr) fail(ErrorCode::InvalidArgument, "site id is null");
    for (const Site& s : scene.sites)
        if (s.id == id) return s;
    fail(ErrorCode::UnknownSite, std::string("unknown site '") + id + "'");
}

// Checks the scene invariants that queries rely on.
ConvexPolygon domain_of(const Scene& scene) {
    ConvexPolygon domain(scene.polygon);
    for (const Site& s : scene.sites)
        if (!is_interior(domain, s.pos)) fail(ErrorCode::SiteTooCloseToBoundary, "site '" + s.id + "' is not interior");
    return domain;
}

}  // namespace

#define HV_REQUIRE(p)                                         \
    do {                                                      \
        if (hv_status st_ = require(p, #p); st_ != HV_OK) return st_; \
    } while (0)

extern "C" {

const char* hv_version(void) { return "1.0.0"; }

const char* hv_last_error(void) { return last_error.c_str(); }

const char* hv_status_name(hv_status status) {
    if (status == HV_OK) return "Ok";
    if (status == HV_IO) return "Io";
    if (status < HV_OK || status > HV_IO) return "Unknown";
    return to_string(static_cast<ErrorCode>(static_cast<int>(status) - 1));
}

int hv_status_exit_code(hv_status status) {
    if (status == HV_OK) return 0;
    if (status == HV_IO) return 2;
    if (status < HV_OK || status > HV_IO) return 1;
    return json::exit_code(static_cast<ErrorCode>(static_cast<int>(status) - 1));
}

const char* hv_string_data(const hv_string* s) { return s ? s->text.c_str() : ""; }

size_t hv_string_size(const hv_string* s) { return s ? s->text.size() : 0; }

void hv_string_free(hv_string* s) { delete s; }

hv_status hv_scene_parse(const char* json_text, size_t len, hv_scene** out) {
    HV_REQUIRE(json_text);
    HV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        *out = new hv_scene{parse_scene(std::string_view(json_text, len))};
        return HV_OK;
    });
}

hv_status hv_scene_read_file(const char* path, hv_scene** out) {
    HV_REQUIRE(path);
    HV_REQUIRE(out);
    *out = nullptr;
    std::ifstream in(path, std::ios::binary);
    if (!in) return failure(HV_IO, std::string("cannot open '") + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    return hv_scene_parse(text.data(), text.size(), out);
}

void hv_scene_free(hv_scene* scene) { delete scene; }

size_t hv_scene_site_count(const hv_scene* scene) { return scene ? scene->scene.sites.size() : 0; }

hv_status hv_scene_site_position(const hv_scene* scene, const char* id, double* x, double* y) {
    HV_REQUIRE(scene);
    HV_REQUIRE(x);
    HV_REQUIRE(y);
    return guarded([&] {
        const Site& s = find_site(scene->scene, id);
        *x = s.pos.x;
        *y = s.pos.y;
        return HV_OK;
    });
}

hv_status hv_distance(const hv_scene* scene, const char* from, const char* to, double* out) {
    HV_REQUIRE(scene);
    HV_REQUIRE(out);
    return guarded([&] {
        const ConvexPolygon domain = domain_of(scene->scene);
        *out = hilbert_distance(domain, find_site(scene->scene, from).pos, find_site(scene->scene, to).pos);
        return HV_OK;
    });
}

hv_status hv_ball(const hv_scene* scene, const char* site, double r, hv_string** out) {
    HV_REQUIRE(scene);
    HV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        const ConvexPolygon domain = domain_of(scene->scene);
        const Site& s = find_site(scene->scene, site);
        const HilbertBall ball = hilbert_ball(domain, s.pos, r);
        double residual = 0.0;
        for (const Point& v : ball.boundary.vertices())
            if (is_interior(domain, v)) residual = std::max(residual, std::abs(hilbert_distance(domain, s.pos, v) - r));
        *out = make_string(json::ball(s.id, ball, residual).dump(2));
        return HV_OK;
    });
}

hv_status hv_bisector(const hv_scene* scene, const char* a, const char* b, hv_string** out) {
    HV_REQUIRE(scene);
    HV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        const ConvexPolygon domain = domain_of(scene->scene);
        const Site& sa = find_site(scene->scene, a);
        const Site& sb = find_site(scene->scene, b);
        if (auto report = detect_degenerate_pair(domain, sa.pos, sb.pos)) {
            report->site_a = std::min(sa.id, sb.id);
            report->site_b = std::max(sa.id, sb.id);
            report->tie_owner = report->site_a;
            *out = make_string(json::degeneracy(*report).dump(2));
            return failure(HV_DEGENERATE_PAIR, "sites '" + sa.id + "' and '" + sb.id + "' have a two-dimensional bisector");
        }
        const BisectorCurve curve = trace_bisector(domain, sa.pos, sb.pos);
        *out = make_string(json::bisector(sa.id, sb.id, domain, sa.pos, sb.pos, curve).dump(2));
        return HV_OK;
    });
}

hv_status hv_zregion(const hv_scene* scene, const char* a, const char* b, hv_string** out) {
    HV_REQUIRE(scene);
    HV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        const ConvexPolygon domain = domain_of(scene->scene);
        const Site& sa = find_site(scene->scene, a);
        const Site& sb = find_site(scene->scene, b);
        *out = make_string(json::zregion(sa.id, sb.id, z_region(domain, sa.pos, sb.pos)).dump(2));
        return HV_OK;
    });
}

hv_status hv_events(const hv_scene* scene, const char* moving, double x0, double y0, double x1, double y1,
                    const char* other, hv_string** out) {
    HV_REQUIRE(scene);
    HV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        const ConvexPolygon domain = domain_of(scene->scene);
        const Site& m = find_site(scene->scene, moving);
        const Site& o = find_site(scene->scene, other);
        const Point from{x0, y0}, to{x1, y1};
        if (!is_finite(from) || !is_finite(to)) fail(ErrorCode::InvalidArgument, "motion endpoints must be finite");
        const auto list = crossing_events(domain, Segment(from, to), o.pos);
        *out = make_string(json::events(m.id, o.id, list).dump(2));
        return HV_OK;
    });
}

hv_status hv_diagram_build(const hv_scene* scene, hv_diagram** out) {
    HV_REQUIRE(scene);
    HV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        *out = new hv_diagram{build_scene(scene->scene)};
        return HV_OK;
    });
}

void hv_diagram_free(hv_diagram* diagram) { delete diagram; }

size_t hv_diagram_cell_count(const hv_diagram* diagram) { return diagram ? diagram->diagram.cells().size() : 0; }

size_t hv_diagram_degeneracy_count(const hv_diagram* diagram) {
    return diagram ? diagram->diagram.degeneracies().size() : 0;
}

hv_status hv_diagram_dump(const hv_diagram* diagram, hv_string** out) {
    HV_REQUIRE(diagram);
    HV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        *out = make_string(dump_to_json(make_dump(diagram->diagram)));
        return HV_OK;
    });
}

hv_status hv_diagram_svg(const hv_diagram* diagram, hv_string** out) {
    HV_REQUIRE(diagram);
    HV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        *out = make_string(render_svg(diagram->diagram));
        return HV_OK;
    });
}

hv_status hv_diagram_nearest(const hv_diagram* diagram, double x, double y, hv_string** out) {
    HV_REQUIRE(diagram);
    HV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        *out = make_string(nearest_site(diagram->diagram, {x, y}));
        return HV_OK;
    });
}

hv_status hv_diagram_grid_check(const hv_diagram* diagram, size_t n, size_t* samples, size_t* skipped,
                                size_t* mismatches) {
    HV_REQUIRE(diagram);
    HV_REQUIRE(samples);
    HV_REQUIRE(skipped);
    HV_REQUIRE(mismatches);
    if (n == 0) return failure(HV_INVALID_ARGUMENT, "grid size must be positive");
    return guarded([&] {
        const GridCheck g = grid_check(diagram->diagram, n);
        *samples = g.samples;
        *skipped = g.skipped;
        *mismatches = g.mismatches;
        return HV_OK;
    });
}

hv_status hv_dump_normalize(const char* json_text, size_t len, hv_string** out) {
    HV_REQUIRE(json_text);
    HV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        *out = make_string(dump_to_json(parse_dump(std::string_view(json_text, len))));
        return HV_OK;
    });
}

hv_status hv_session_new(size_t capacity, hv_session** out) {
    HV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        *out = new hv_session{ProtocolSession(capacity == 0 ? 256 : capacity)};
        return HV_OK;
    });
}

void hv_session_free(hv_session* session) { delete session; }

hv_status hv_session_handle(hv_session* session, const char* request, size_t len, hv_string** out) {
    HV_REQUIRE(session);
    HV_REQUIRE(request);
    HV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        *out = make_string(session->session.handle(std::string_view(request, len)));
        return HV_OK;
    });
}

}  // extern "C"
