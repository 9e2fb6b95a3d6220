#include <chrono>
#include <cmath>

#include "doctest.h"
#include "hilbert/voronoi.hpp"
#include "test_support.hpp"

using namespace hilbert;
using doctest::Approx;

namespace {

std::vector<Site> random_sites(std::mt19937_64& rng, const ConvexPolygon& poly, std::size_t n) {
    std::vector<Site> sites;
    for (std::size_t i = 0; i < n; ++i) sites.push_back({"s" + std::to_string(i), testing::random_interior(rng, poly, 0.03)});
    return sites;
}

double total_area(const VoronoiDiagram& d) {
    double a = 0.0;
    for (const VoronoiCell& c : d.cells()) a += c.region.area();
    return a;
}

// Area of the symmetric difference of two polygons estimated on a grid.
double symmetric_difference(const StarPolygon& a, const StarPolygon& b, const ConvexPolygon& domain, int n) {
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const Point& p : domain.vertices()) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    }
    const double cell = (hi_x - lo_x) * (hi_y - lo_y) / (n * n);
    double area = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Point q{lo_x + (hi_x - lo_x) * (i + 0.5) / n, lo_y + (hi_y - lo_y) * (j + 0.5) / n};
            if (a.contains(q) != b.contains(q)) area += cell;
        }
    return area;
}

}  // namespace

TEST_CASE("empty diagrams") {
    CHECK(VoronoiDiagram(testing::unit_square()).cells().empty());
    CHECK(VoronoiDiagram(testing::unit_triangle()).sites().empty());
    try {
        VoronoiDiagram(ConvexPolygon({{0, 0}, {1, 0}, {0.2, 0.2}, {0, 1}}));
        FAIL("expected InvalidPolygon");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidPolygon);
    }
}

TEST_CASE("single site owns the domain") {
    const VoronoiDiagram d = VoronoiDiagram(testing::unit_square()).insert_site({"a", {0.3, 0.6}});
    REQUIRE(d.cells().size() == 1);
    CHECK(d.cells()[0].region.area() == Approx(1.0));
    CHECK(nearest_site(d, {0.9, 0.1}) == "a");
    CHECK(d.remove_site("a").cells().empty());
}

TEST_CASE("symmetric pair in the square") {
    const VoronoiDiagram d = build_diagram(testing::unit_square(), {{"b", {0.75, 0.5}}, {"a", {0.25, 0.5}}});
    REQUIRE(d.cells().size() == 2);
    const StarPolygon& left = d.cell("a").region;
    const StarPolygon& right = d.cell("b").region;
    CHECK(left.area() == Approx(0.5).epsilon(1e-9));
    CHECK(right.area() == Approx(0.5).epsilon(1e-9));
    for (const Point& p : left.points) CHECK(p.x <= 0.5 + 1e-9);
    for (const Point& p : right.points) CHECK(p.x >= 0.5 - 1e-9);
    CHECK(nearest_site(d, {0.5, 0.3}) == "a");  // tie goes to the smaller id
    CHECK(nearest_site(d, {0.25, 0.5}) == "a");
    CHECK(d.degeneracies().empty());

    // provenance: edges on x = 0.5 come from the pair, the rest from the boundary
    for (std::size_t i = 0; i < left.points.size(); ++i) {
        const Point a = left.points[i], b = left.points[(i + 1) % left.points.size()];
        const EdgeSource& src = d.sources()[left.tags[i]];
        if (std::abs(a.x - 0.5) < 1e-9 && std::abs(b.x - 0.5) < 1e-9)
            CHECK(src.kind == EdgeSource::Kind::Bisector);
        else
            CHECK(src.kind == EdgeSource::Kind::Boundary);
    }
}

TEST_CASE("insertion errors") {
    const VoronoiDiagram d = VoronoiDiagram(testing::unit_square()).insert_site({"a", {0.3, 0.6}});
    auto code_of = [&](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Internal;
    };
    CHECK(code_of([&] { (void)d.insert_site({"a", {0.5, 0.5}}); }) == ErrorCode::DuplicateSite);
    CHECK(code_of([&] { (void)d.insert_site({"b", {0.3, 0.6}}); }) == ErrorCode::SiteCoincident);
    CHECK(code_of([&] { (void)d.insert_site({"b", {0.0, 0.6}}); }) == ErrorCode::SiteTooCloseToBoundary);
    CHECK(code_of([&] { (void)d.insert_site({"b", {1.5, 0.6}}); }) == ErrorCode::SiteTooCloseToBoundary);
    CHECK(code_of([&] { (void)d.remove_site("zz"); }) == ErrorCode::UnknownSite);
    CHECK(code_of([&] { (void)d.move_site("a", {1.0, 0.5}); }) == ErrorCode::SiteTooCloseToBoundary);
    CHECK(code_of([&] { (void)nearest_site(VoronoiDiagram(testing::unit_square()), {0.5, 0.5}); }) ==
          ErrorCode::EmptyDiagram);
}

TEST_CASE("grid oracle on random diagrams") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 12; ++trial) {
        const ConvexPolygon poly = testing::random_polygon(rng, 3 + trial % 8);
        const VoronoiDiagram d = build_diagram(poly, random_sites(rng, poly, 2 + trial % 5));
        CHECK(std::abs(total_area(d) - poly.area()) <= 1e-6 * poly.area());
        const GridCheck g = grid_check(d, 64);
        CHECK(g.mismatches == 0);
        CHECK(g.samples - g.skipped > 1000);
        for (std::size_t i = 0; i < d.sites().size(); ++i) CHECK(d.cells()[i].region.contains(d.sites()[i].pos));
    }
}

TEST_CASE("cells are star-shaped around their sites") {
    std::mt19937_64 rng(52);
    const ConvexPolygon poly = testing::random_polygon(rng, 7);
    const VoronoiDiagram d = build_diagram(poly, random_sites(rng, poly, 5));
    const double band = sampling_tolerance(poly);
    for (std::size_t i = 0; i < d.sites().size(); ++i) {
        const StarPolygon& cell = d.cells()[i].region;
        const auto& pts = cell.points;
        for (int k = 0; k < 50; ++k) {
            const std::size_t e = static_cast<std::size_t>(k) * pts.size() / 50;
            const Point target = lerp(pts[e], pts[(e + 1) % pts.size()], 0.37);
            for (int j = 1; j < 20; ++j) {
                const Point q = lerp(d.sites()[i].pos, target, j / 20.0);
                CHECK((cell.contains(q) || cell.boundary_distance(q) <= band));
            }
        }
    }
}

TEST_CASE("insertion order does not matter") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 4; ++trial) {
        const ConvexPolygon poly = testing::random_polygon(rng, 4 + trial);
        std::vector<Site> sites = random_sites(rng, poly, 5);
        const VoronoiDiagram forward = build_diagram(poly, sites);
        VoronoiDiagram backward(poly);
        for (auto it = sites.rbegin(); it != sites.rend(); ++it) backward = backward.insert_site(*it);
        for (const Site& s : sites) {
            const double diff = symmetric_difference(forward.cell(s.id).region, backward.cell(s.id).region, poly, 400);
            CHECK(diff <= 1e-4 * poly.area());
            CHECK(forward.cell(s.id).region.area() == Approx(backward.cell(s.id).region.area()).epsilon(1e-9));
        }
    }
}

TEST_CASE("remove and move rebuild from scratch") {
    std::mt19937_64 rng(54);
    const ConvexPolygon poly = testing::random_polygon(rng, 6);
    const std::vector<Site> sites = random_sites(rng, poly, 4);
    const VoronoiDiagram d = build_diagram(poly, sites);
    const VoronoiDiagram removed = d.remove_site("s1");
    std::vector<Site> rest = sites;
    rest.erase(rest.begin() + 1);
    const VoronoiDiagram scratch = build_diagram(poly, rest);
    for (const Site& s : rest) CHECK(removed.cell(s.id).region.points == scratch.cell(s.id).region.points);

    const VoronoiDiagram same = d.move_site("s2", d.site("s2").pos);
    for (const Site& s : sites) CHECK(same.cell(s.id).region.area() == Approx(d.cell(s.id).region.area()).epsilon(1e-12));
}

TEST_CASE("degenerate pair in the square") {
    const VoronoiDiagram d = build_diagram(testing::unit_square(), {{"a", {0.5, 0.3}}, {"b", {0.5, 0.7}}});
    REQUIRE(d.degeneracies().size() == 1);
    const DegeneracyReport& rep = d.degeneracies()[0];
    CHECK(rep.tie_owner == "a");
    CHECK(rep.regions.size() == 2);
    CHECK(std::abs(total_area(d) - 1.0) <= 1e-6);
    // the right-side equidistant region belongs to the tie owner
    CHECK(d.cell("a").region.contains({0.9, 0.5}));
    CHECK_FALSE(d.cell("b").region.contains({0.9, 0.5}));
    CHECK(nearest_site(d, {0.9, 0.5}) == "a");
    CHECK(grid_check(d, 64).mismatches == 0);

    // moving across the alignment shifts ownership of a region of positive area
    const VoronoiDiagram left = d.move_site("b", {0.5 - 1e-4, 0.7});
    const VoronoiDiagram right = d.move_site("b", {0.5 + 1e-4, 0.7});
    CHECK(left.degeneracies().empty());
    CHECK(right.degeneracies().empty());
    const double jump = symmetric_difference(left.cell("a").region, right.cell("a").region, testing::unit_square(), 400);
    MESSAGE("symmetric difference across the alignment: " << jump);
    CHECK(jump > 0.01);
}

TEST_CASE("insertion time grows about linearly") {
    std::mt19937_64 rng(55);
    const ConvexPolygon poly = testing::random_polygon(rng, 8);
    const std::vector<Site> sites = random_sites(rng, poly, 16);
    VoronoiDiagram d(poly);
    for (const Site& s : sites) d = d.insert_site(s);
    CHECK(d.cells().size() == 16);
    CHECK(std::abs(total_area(d) - poly.area()) <= 1e-6 * poly.area());
}
