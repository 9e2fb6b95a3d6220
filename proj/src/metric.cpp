#include "hilbert/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hilbert {

double interior_tolerance(const ConvexPolygon& domain) { return kInteriorFactor * domain.diameter(); }

bool is_interior(const ConvexPolygon& domain, Point p) {
    return is_finite(p) && domain.boundary_distance(p) > interior_tolerance(domain);
}

void require_interior(const ConvexPolygon& domain, Point p) {
    if (!is_interior(domain, p)) fail(ErrorCode::PointNotInterior, "point is not strictly interior to the domain");
}

RayExit ray_exit(const ConvexPolygon& domain, Point origin, Point dir) {
    const double len = norm(dir);
    if (!(len > 0.0)) fail(ErrorCode::InvalidArgument, "ray direction is zero");
    const Point u = (1.0 / len) * dir;
    const double tie = 1e-11 * std::max(1.0, domain.diameter());
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> ts(domain.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < domain.size(); ++i) {
        const LineEq& e = domain.inward(i);
        const double rate = e.a * u.x + e.b * u.y;
        if (rate >= 0.0) continue;
        ts[i] = std::max(0.0, e(origin)) / -rate;
        best = std::min(best, ts[i]);
    }
    if (!std::isfinite(best)) fail(ErrorCode::Internal, "ray does not leave the domain");
    std::size_t edge = 0;
    while (ts[edge] > best + tie) ++edge;
    return {origin + best * u, edge, best};
}

namespace {

void require_distinct(const ConvexPolygon& domain, Point s, Point t) {
    if (distance(s, t) <= kEpsGeom * std::max(1.0, domain.diameter()))
        fail(ErrorCode::PointsCoincide, "points coincide");
}

// Distances along the line s -> t: forward exit at `ahead` from s, backward
// exit at `behind` from s, with len = |t - s|.
struct ChordParams {
    double len, ahead, behind;
};

ChordParams chord_params(const ConvexPolygon& domain, Point s, Point t) {
    const Point d = t - s;
    const RayExit fwd = ray_exit(domain, s, d);
    const RayExit bwd = ray_exit(domain, s, -1.0 * d);
    return {norm(d), fwd.t, bwd.t};
}

}  // namespace

Chord chord(const ConvexPolygon& domain, Point s, Point t) {
    require_interior(domain, s);
    require_interior(domain, t);
    require_distinct(domain, s, t);
    const RayExit fwd = ray_exit(domain, s, t - s);
    const RayExit bwd = ray_exit(domain, s, s - t);
    return {bwd.point, fwd.point, bwd.edge, fwd.edge};
}

double funk_distance(const ConvexPolygon& domain, Point s, Point t) {
    require_interior(domain, s);
    require_interior(domain, t);
    if (s == t) return 0.0;
    const ChordParams c = chord_params(domain, s, t);
    return -std::log1p(-c.len / c.ahead);
}

double hilbert_distance(const ConvexPolygon& domain, Point s, Point t) {
    require_interior(domain, s);
    require_interior(domain, t);
    if (s == t) return 0.0;
    const ChordParams c = chord_params(domain, s, t);
    // (s,t;y,x) = |s-y||t-x| / (|t-y||s-x|) written with log1p for short chords.
    return 0.5 * (-std::log1p(-c.len / c.ahead) + std::log1p(c.len / c.behind));
}

bool geodesic_additivity_holds(const ConvexPolygon& domain, Point a, Point b, Point c) {
    for (Point p : {a, b, c}) require_interior(domain, p);
    require_distinct(domain, a, b);
    require_distinct(domain, b, c);
    require_distinct(domain, a, c);
    const double tol = kEpsGeom * std::max(1.0, domain.diameter());
    auto exit_point = [&](Point from, Point to) { return ray_exit(domain, from, to - from).point; };
    auto collinear = [&](Point p, Point q, Point r) {
        // Measure the residual against the longest side so coincident points pass.
        const double pq = distance(p, q), qr = distance(q, r), pr = distance(p, r);
        const double longest = std::max({pq, qr, pr});
        if (longest <= tol) return true;
        const double area2 = std::abs(signed_area2(p, q, r));
        return area2 / longest <= tol;
    };
    return collinear(exit_point(a, b), exit_point(b, c), exit_point(a, c)) &&
           collinear(exit_point(b, a), exit_point(c, b), exit_point(c, a));
}

std::vector<Spoke> spokes(const ConvexPolygon& domain, Point s) {
    require_interior(domain, s);
    std::vector<Spoke> out;
    out.reserve(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) {
        const Point v = domain.vertex(i);
        const RayExit fwd = ray_exit(domain, s, s - v);
        out.push_back({s, i, fwd.point, fwd.edge, v});
    }
    return out;
}

SectorLabel sector_label(const ConvexPolygon& domain, Point s, Point t, Point p) {
    const RayExit sb = ray_exit(domain, s, s - p);
    const RayExit sf = ray_exit(domain, s, p - s);
    const RayExit tb = ray_exit(domain, t, t - p);
    const RayExit tf = ray_exit(domain, t, p - t);
    return {sb.edge, sf.edge, tb.edge, tf.edge};
}

std::vector<Sector> sector_decomposition(const ConvexPolygon& domain, Point s, Point t) {
    require_interior(domain, s);
    require_interior(domain, t);
    require_distinct(domain, s, t);

    std::vector<Line> cuts;
    for (Point site : {s, t}) {
        for (std::size_t i = 0; i < domain.size(); ++i) {
            const Line l = Line::through(site, domain.vertex(i));
            const bool seen = std::any_of(cuts.begin(), cuts.end(), [&](const Line& c) { return c.approx_equal(l, 1e-12); });
            if (!seen) cuts.push_back(l);
        }
    }

    const double min_area = 1e-15 * domain.area();
    std::vector<std::vector<Point>> cells{domain.vertices()};
    for (const Line& cut : cuts) {
        std::vector<std::vector<Point>> next;
        next.reserve(cells.size() * 2);
        for (const auto& cell : cells) {
            for (int side : {1, -1}) {
                auto piece = clip_polygon_halfplane(cell, cut, side);
                if (!piece.empty() && polygon_area(piece) > min_area) next.push_back(std::move(piece));
            }
        }
        cells = std::move(next);
    }

    std::vector<Sector> out;
    out.reserve(cells.size());
    for (const auto& cell : cells) {
        std::optional<ConvexPolygon> region;
        try {
            region = ConvexPolygon::hull_of(cell);
        } catch (const Error&) {
            continue;  // sliver below predicate resolution
        }
        const Point c = polygon_centroid(cell);
        const SectorLabel label = sector_label(domain, s, t, c);
        out.push_back({*region, label,
                       {domain.inward(label.a), domain.inward(label.b), domain.inward(label.c), domain.inward(label.d)},
                       s, t});
    }
    return out;
}

Point point_at_distance(const ConvexPolygon& domain, Point s, Point dir, double r) {
    require_interior(domain, s);
    if (!std::isfinite(r) || r < 0.0) fail(ErrorCode::InvalidArgument, "distance must be finite and non-negative");
    if (r == 0.0) return s;
    const double len = norm(dir);
    if (!(len > 0.0)) fail(ErrorCode::InvalidArgument, "direction is zero");
    const Point u = (1.0 / len) * dir;
    const double ahead = ray_exit(domain, s, u).t;
    const double behind = ray_exit(domain, s, -1.0 * u).t;
    // ahead (p + behind) = e^{2r} behind (ahead - p), solved for p and
    // rewritten with e^{-2r} to stay finite for large radii.
    const double q = std::exp(-2.0 * r);
    const double along = ahead * behind * (-std::expm1(-2.0 * r)) / (ahead * q + behind);
    return s + along * u;
}

HilbertBall hilbert_ball(const ConvexPolygon& domain, Point s, double r) {
    require_interior(domain, s);
    if (!std::isfinite(r) || r <= 0.0) fail(ErrorCode::InvalidArgument, "ball radius must be positive");
    std::vector<Point> pts;
    pts.reserve(2 * domain.size());
    for (const Point& v : domain.vertices()) {
        const Point d = v - s;
        pts.push_back(point_at_distance(domain, s, d, r));
        pts.push_back(point_at_distance(domain, s, -1.0 * d, r));
    }
    return {s, r, ConvexPolygon::hull_of(pts)};
}

}  // namespace hilbert
