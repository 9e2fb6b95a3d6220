#include "hilbert/degeneracy.hpp"

#include <algorithm>
#include <cmath>

namespace hilbert {

namespace {

std::array<double, 3> homog_cross(const HomogeneousPoint& p, const HomogeneousPoint& q) {
    return {p.y * q.w - p.w * q.y, p.w * q.x - p.x * q.w, p.x * q.y - p.y * q.x};
}

void require_pair(const ConvexPolygon& domain, Point s, Point t) {
    require_interior(domain, s);
    require_interior(domain, t);
    if (distance(s, t) <= kEpsGeom * std::max(1.0, domain.diameter())) fail(ErrorCode::PointsCoincide, "sites coincide");
}

}  // namespace

HomogeneousPoint vanishing_point(const ConvexPolygon& domain, std::size_t i, std::size_t j) {
    return line_intersection(domain.inward(i), domain.inward(j)).normalized();
}

double incidence_residual(Point s, Point t, const HomogeneousPoint& o) {
    const Line l = Line::through(s, t);
    const HomogeneousPoint n = o.normalized();
    return std::abs(l.u() * n.x + l.v() * n.y + l.l() * n.w);
}

std::optional<DegeneracyReport> detect_degenerate_pair(const ConvexPolygon& domain, Point s, Point t) {
    require_pair(domain, s, t);
    std::optional<std::vector<Sector>> sectors;
    for (std::size_t i = 0; i < domain.size(); ++i) {
        for (std::size_t j = i + 1; j < domain.size(); ++j) {
            const HomogeneousPoint o = vanishing_point(domain, i, j);
            if (incidence_residual(s, t, o) > kEpsGeom) continue;
            if (!sectors) sectors = sector_decomposition(domain, s, t);
            DegeneracyReport report;
            report.edge_i = i;
            report.edge_j = j;
            report.vanishing_point = o;
            // Both chords behind/ahead through the same pair of edges.
            for (const SectorLabel want : {SectorLabel{i, j, i, j}, SectorLabel{j, i, j, i}}) {
                std::vector<Point> pts;
                for (const Sector& sec : *sectors)
                    if (sec.edges == want) pts.insert(pts.end(), sec.region.vertices().begin(), sec.region.vertices().end());
                if (pts.empty()) continue;
                try {
                    report.regions.push_back(ConvexPolygon::hull_of(pts));
                } catch (const Error&) {
                }
            }
            if (!report.regions.empty()) return report;
        }
    }
    return std::nullopt;
}

ZRegion z_region(const ConvexPolygon& domain, Point s, Point t) {
    require_pair(domain, s, t);
    const HomogeneousPoint hs = HomogeneousPoint::from(s), ht = HomogeneousPoint::from(t);
    std::vector<Point> z = domain.vertices();
    for (std::size_t i = 0; i < domain.size(); ++i) {
        for (std::size_t j = i + 1; j < domain.size(); ++j) {
            const HomogeneousPoint o = vanishing_point(domain, i, j);
            if (incidence_residual(s, t, o) <= kEpsGeom)
                fail(ErrorCode::DegeneratePair, "sites are collinear with a vanishing point");
            // Lines O s and O t; keep the wedge between them that holds segment st.
            const auto ls = homog_cross(hs, o);
            const auto lt = homog_cross(ht, o);
            const LineEq through_s{ls[0], ls[1], ls[2]};
            const LineEq through_t{lt[0], lt[1], lt[2]};
            z = clip_polygon_halfplane(z, through_s, through_s(t) > 0 ? 1 : -1);
            z = clip_polygon_halfplane(z, through_t, through_t(s) > 0 ? 1 : -1);
            if (z.empty()) fail(ErrorCode::Internal, "Z region collapsed");
        }
    }
    return {ConvexPolygon::hull_of(z)};
}

std::vector<CrossingEvent> crossing_events(const ConvexPolygon& domain, const Segment& motion, Point other) {
    require_interior(domain, motion.a);
    require_interior(domain, motion.b);
    require_interior(domain, other);
    std::vector<CrossingEvent> events;
    const Point d = motion.b - motion.a;
    auto det = [](double ax, double ay, double aw, Point o, const HomogeneousPoint& v) {
        return ax * (o.y * v.w - v.y) - ay * (o.x * v.w - v.x) + aw * (o.x * v.y - o.y * v.x);
    };
    for (std::size_t i = 0; i < domain.size(); ++i) {
        for (std::size_t j = i + 1; j < domain.size(); ++j) {
            const HomogeneousPoint o = vanishing_point(domain, i, j);
            // det[motion(u); other; O] is affine in u.
            const double f0 = det(motion.a.x, motion.a.y, 1.0, other, o);
            const double f1 = det(d.x, d.y, 0.0, other, o);
            if (std::abs(f1) <= kEpsSingular * norm(d)) continue;
            const double u = -f0 / f1;
            if (u < -1e-12 || u > 1.0 + 1e-12) continue;
            const Point p = motion.at(std::clamp(u, 0.0, 1.0));
            if (!is_interior(domain, p) || distance(p, other) <= kEpsGeom * std::max(1.0, domain.diameter())) continue;
            if (!detect_degenerate_pair(domain, p, other)) continue;
            events.push_back({std::clamp(u, 0.0, 1.0), o, i, j});
        }
    }
    std::sort(events.begin(), events.end(), [](const CrossingEvent& a, const CrossingEvent& b) { return a.u < b.u; });
    events.erase(std::unique(events.begin(), events.end(),
                             [](const CrossingEvent& a, const CrossingEvent& b) { return std::abs(a.u - b.u) <= 1e-9; }),
                 events.end());
    return events;
}

}  // namespace hilbert
