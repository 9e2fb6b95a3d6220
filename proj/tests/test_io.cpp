#include <cmath>

#include "doctest.h"
#include "hilbert/io.hpp"
#include "test_support.hpp"

using namespace hilbert;

namespace {

ErrorCode code_of(std::string_view text) {
    try {
        (void)parse_scene(text);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("scene round trip") {
    const Scene scene{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{"a", {0.25, 0.5}}, {"b", {0.1 + 0.2, 1.0 / 3.0}}}};
    CHECK(parse_scene(scene_to_json(scene)) == scene);
    const Scene bare = parse_scene(R"({"polygon": [[0,0],[2,0],[0,2]]})");
    CHECK(bare.polygon.size() == 3);
    CHECK(bare.sites.empty());
}

TEST_CASE("scene parse errors") {
    CHECK(code_of("{") == ErrorCode::Parse);
    CHECK(code_of("[]") == ErrorCode::Parse);
    CHECK(code_of(R"({"sites": []})") == ErrorCode::Parse);
    CHECK(code_of(R"({"polygon": [[0,0],[1,0],[1]]})") == ErrorCode::Parse);
    CHECK(code_of(R"({"polygon": [[0,0],[1,0],[1,1]], "sites": [{"id": 3, "pos": [0.5,0.2]}]})") == ErrorCode::Parse);
    CHECK(code_of(R"({"polygon": [[0,0],[1,0],[1,1]], "sites": [{"id": "a"}]})") == ErrorCode::Parse);
}

TEST_CASE("dump round trip") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 5; ++trial) {
        const ConvexPolygon poly = testing::random_polygon(rng, 4 + trial);
        Scene scene{poly.vertices(), {}};
        for (int i = 0; i < 4; ++i) scene.sites.push_back({"s" + std::to_string(i), testing::random_interior(rng, poly, 0.05)});
        const DiagramDump dump = make_dump(build_scene(scene));
        CHECK(dump.scene == scene);
        REQUIRE(dump.cells.size() == 4);
        for (const DumpCell& c : dump.cells) {
            CHECK(c.edges.size() == c.polyline.size());
            for (const DumpEdge& e : c.edges) {
                if (e.kind == "bisector") {
                    CHECK(e.sector_edges.has_value());
                    CHECK(e.conic.has_value());
                    CHECK(e.k.has_value());
                }
            }
        }
        CHECK(parse_dump(dump_to_json(dump)) == dump);
    }
}

TEST_CASE("dump of a degenerate pair") {
    const Scene scene{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{"a", {0.5, 0.3}}, {"b", {0.5, 0.7}}}};
    const DiagramDump dump = make_dump(build_scene(scene));
    REQUIRE(dump.degeneracies.size() == 1);
    const DumpDegeneracy& g = dump.degeneracies[0];
    CHECK(g.pair == std::array<std::string, 2>{"a", "b"});
    CHECK(g.tie_assignment == "a");
    CHECK(g.regions.size() == 2);
    CHECK(std::abs(g.vanishing_point[2]) <= 1e-12);
    bool tie = false;
    for (const DumpCell& c : dump.cells)
        for (const DumpEdge& e : c.edges) tie |= e.kind == "tie";
    CHECK(tie);
    CHECK(parse_dump(dump_to_json(dump)) == dump);
}

TEST_CASE("dump parse errors") {
    auto code = [](std::string_view text) {
        try {
            (void)parse_dump(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Internal;
    };
    const std::string good = dump_to_json(make_dump(build_scene({{{0, 0}, {1, 0}, {0, 1}}, {{"a", {0.2, 0.2}}}})));
    CHECK_NOTHROW(parse_dump(good));
    std::string wrong_version = good;
    wrong_version.replace(wrong_version.find("\"version\": 1"), 12, "\"version\": 9");
    CHECK(code(wrong_version) == ErrorCode::Parse);
    CHECK(code(R"({"format": "other", "version": 1})") == ErrorCode::Parse);
    std::string bad_kind = good;
    bad_kind.replace(bad_kind.find("\"boundary\""), 10, "\"spline\"");
    CHECK(code(bad_kind) == ErrorCode::Parse);
}

TEST_CASE("svg is deterministic") {
    const Scene scene{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{"a", {0.25, 0.5}}, {"b&", {0.75, 0.5}}}};
    const std::string first = render_svg(build_scene(scene));
    CHECK(first == render_svg(build_scene(scene)));
    CHECK(first.find("viewBox=\"0 0 1000 1000\"") != std::string::npos);
    CHECK(first.find("data-site=\"b&amp;\"") != std::string::npos);
    CHECK(first.find("class=\"domain\"") != std::string::npos);
}
