#include <cmath>

#include "doctest.h"
#include "hilbert/bisector.hpp"
#include "hilbert/degeneracy.hpp"
#include "test_support.hpp"

using namespace hilbert;
using doctest::Approx;

namespace {

Point random_in(std::mt19937_64& rng, const ConvexPolygon& region) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const auto& v = region.vertices();
    Point acc{0, 0};
    double total = 0.0;
    for (const Point& p : v) {
        const double w = uni(rng);
        acc = acc + w * p;
        total += w;
    }
    return acc * (1.0 / total);
}

}  // namespace

TEST_CASE("vertical pair in the square is degenerate") {
    const ConvexPolygon sq = testing::unit_square();
    const Point s{0.5, 0.3}, t{0.5, 0.7};
    CHECK(hilbert_distance(sq, s, {0.9, 0.5}) == Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(hilbert_distance(sq, t, {0.9, 0.5}) == Approx(std::log(3.0)).epsilon(1e-12));

    const auto report = detect_degenerate_pair(sq, s, t);
    REQUIRE(report);
    CHECK(report->vanishing_point.at_infinity());
    CHECK(incidence_residual(s, t, report->vanishing_point) <= kEpsGeom);
    REQUIRE(report->regions.size() == 2);
    bool right = false;
    for (const ConvexPolygon& r : report->regions) right |= r.contains({0.9, 0.5});
    CHECK(right);

    std::mt19937_64 rng(61);
    int samples = 0;
    for (const ConvexPolygon& r : report->regions)
        for (int k = 0; k < 100; ++k) {
            const Point p = random_in(rng, r);
            if (!is_interior(sq, p)) continue;
            CHECK(std::abs(hilbert_distance(sq, s, p) - hilbert_distance(sq, t, p)) <= 1e-7);
            ++samples;
        }
    CHECK(samples >= 100);
}

TEST_CASE("non-degenerate pairs") {
    const ConvexPolygon sq = testing::unit_square();
    CHECK_FALSE(detect_degenerate_pair(sq, {0.3, 0.4}, {0.6, 0.7}));
    // on the diagonal through the corner vanishing points, but the shared-edge
    // sector does not exist
    CHECK_FALSE(detect_degenerate_pair(sq, {0.3, 0.3}, {0.6, 0.6}));
    CHECK_NOTHROW(trace_bisector(sq, {0.3, 0.3}, {0.6, 0.6}));

    const Point s{0.5, 0.3}, t{0.5 + 1e-3, 0.7};
    CHECK_FALSE(detect_degenerate_pair(sq, s, t));
    const BisectorCurve curve = trace_bisector(sq, s, t);
    for (const Point& p : curve.polyline())
        if (is_interior(sq, p)) CHECK(std::abs(hilbert_distance(sq, s, p) - hilbert_distance(sq, t, p)) <= 1e-6);

    CHECK_THROWS_AS(detect_degenerate_pair(sq, s, s), Error);
}

TEST_CASE("z region") {
    const ConvexPolygon sq = testing::unit_square();
    try {
        z_region(sq, {0.5, 0.3}, {0.5, 0.7});
        FAIL("expected DegeneratePair");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegeneratePair);
    }

    std::mt19937_64 rng(62);
    int done = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const ConvexPolygon poly = testing::random_polygon(rng, 3 + trial % 8);
        const Point s = testing::random_interior(rng, poly, 0.05), t = testing::random_interior(rng, poly, 0.05);
        if (distance(s, t) < 0.05) continue;
        const ZRegion z = z_region(poly, s, t);
        CHECK(z.quad.size() == 4);
        CHECK(z.quad.contains(lerp(s, t, 0.5), 1e-12));
        CHECK(z.quad.contains(s, 1e-9));
        CHECK(z.quad.contains(t, 1e-9));
        const BisectorCurve curve = trace_bisector(poly, s, t);
        const auto pts = curve.polyline();
        for (std::size_t k = 0; k < pts.size(); k += std::max<std::size_t>(1, pts.size() / 20)) {
            const Point c = pts[k];
            if (!is_interior(poly, c)) continue;
            const double r = hilbert_distance(poly, c, s);
            for (const Point& v : z.quad.vertices()) CHECK(hilbert_distance(poly, c, v) <= r + 1e-7);
            // the ball has s and t on its boundary, so its boundary misses the interior of Z
            const HilbertBall ball = hilbert_ball(poly, c, r);
            for (const Point& b : ball.boundary.vertices()) CHECK(z.quad.boundary_distance(b) <= 1e-7);
        }
        ++done;
    }
    CHECK(done >= 50);
}

TEST_CASE("crossing events") {
    const ConvexPolygon sq = testing::unit_square();
    const auto events = crossing_events(sq, Segment({0.3, 0.3}, {0.7, 0.3}), {0.5, 0.7});
    REQUIRE(events.size() == 1);
    CHECK(events[0].u == Approx(0.5).epsilon(1e-12));
    CHECK(events[0].vanishing_point.at_infinity());

    CHECK(crossing_events(sq, Segment({0.2, 0.2}, {0.4, 0.2}), {0.6, 0.7}).empty());

    std::mt19937_64 rng(63);
    for (int trial = 0; trial < 100; ++trial) {
        const ConvexPolygon poly = testing::random_polygon(rng, 3 + trial % 8);
        const Point a = testing::random_interior(rng, poly), b = testing::random_interior(rng, poly);
        const Point other = testing::random_interior(rng, poly);
        if (distance(a, b) < 1e-3) continue;
        const Segment motion(a, b);
        double last = -1.0;
        for (const CrossingEvent& e : crossing_events(poly, motion, other)) {
            CHECK(e.u >= last);
            last = e.u;
            CHECK(detect_degenerate_pair(poly, motion.at(e.u), other));
        }
    }
}
