#include "hilbert/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

namespace hilbert {

namespace {

// Values of a normalized line equation within this band count as "on the line"
// when clipping, so vertices shared by neighbouring cells are not duplicated.
constexpr double kClipEps = 1e-13;

}  // namespace

// ---------------------------------------------------------------------------
// HomogeneousPoint

bool HomogeneousPoint::at_infinity() const {
    const double n = std::max({std::abs(x), std::abs(y), std::abs(w)});
    return std::abs(w) <= kEpsSingular * n;
}

Point HomogeneousPoint::to_point() const {
    if (at_infinity()) fail(ErrorCode::ImageAtInfinity, "point at infinity has no Euclidean image");
    return {x / w, y / w};
}

HomogeneousPoint HomogeneousPoint::normalized() const {
    const double n = std::sqrt(x * x + y * y + w * w);
    if (n == 0.0) fail(ErrorCode::InvalidArgument, "zero homogeneous point");
    return {x / n, y / n, w / n};
}

// ---------------------------------------------------------------------------
// Line / Segment

Line Line::from_coeffs(double u, double v, double l) {
    const double n = std::hypot(u, v);
    if (!(n > kEpsSingular) || !std::isfinite(l)) fail(ErrorCode::InvalidArgument, "line needs (u,v) != (0,0)");
    u /= n;
    v /= n;
    l /= n;
    const bool flip = std::abs(u) > kEpsSingular ? u < 0.0 : v < 0.0;
    if (flip) {
        u = -u;
        v = -v;
        l = -l;
    }
    return Line(u, v, l);
}

Line Line::through(Point p, Point q) {
    const Point d = q - p;
    if (norm(d) <= kEpsGeom) fail(ErrorCode::CoincidentPoints, "line through coincident points");
    // (q - p) x ((x, y) - p) = 0
    return from_coeffs(-d.y, d.x, d.y * p.x - d.x * p.y);
}

bool Line::approx_equal(const Line& o, double tol) const {
    return std::abs(u_ - o.u_) <= tol && std::abs(v_ - o.v_) <= tol && std::abs(l_ - o.l_) <= tol;
}

Segment::Segment(Point a_, Point b_) : a(a_), b(b_) {
    if (distance(a, b) <= kEpsGeom) fail(ErrorCode::CoincidentPoints, "degenerate segment");
}

// ---------------------------------------------------------------------------
// Predicates

double signed_area2(Point p, Point q, Point r) { return cross(q - p, r - p); }

int orient(Point p, Point q, Point r) {
    const double a = signed_area2(p, q, r);
    if (std::abs(a) <= kEpsGeom) return 0;
    return a > 0.0 ? 1 : -1;
}

HomogeneousPoint line_intersection(const LineEq& l1, const LineEq& l2) {
    HomogeneousPoint h{l1.b * l2.c - l1.c * l2.b, l1.c * l2.a - l1.a * l2.c, l1.a * l2.b - l1.b * l2.a};
    const double n1 = std::sqrt(l1.a * l1.a + l1.b * l1.b + l1.c * l1.c);
    const double n2 = std::sqrt(l2.a * l2.a + l2.b * l2.b + l2.c * l2.c);
    const double nh = std::sqrt(h.x * h.x + h.y * h.y + h.w * h.w);
    if (nh <= kEpsSingular * n1 * n2) fail(ErrorCode::CoincidentLines, "lines coincide");
    return h;
}

HomogeneousPoint line_intersection(const Line& l1, const Line& l2) {
    if (l1.approx_equal(l2)) fail(ErrorCode::CoincidentLines, "lines coincide");
    return line_intersection(l1.eq(), l2.eq());
}

double point_line_distance(const Line& line, Point p) { return std::abs(line.eval(p)); }

double point_segment_distance(Point p, Point a, Point b) {
    const Point d = b - a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return distance(p, a + t * d);
}

double cross_ratio(Point a, Point b, Point c, Point d) {
    const std::array<Point, 4> pts{a, b, c, d};
    double scale = 1.0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            const double dij = distance(pts[i], pts[j]);
            if (dij <= kEpsGeom) fail(ErrorCode::CoincidentPoints, "cross ratio needs four distinct points");
            scale = std::max(scale, dij);
        }
    }
    const Line line = Line::through(a, b);
    if (point_line_distance(line, c) > kEpsGeom * scale || point_line_distance(line, d) > kEpsGeom * scale)
        fail(ErrorCode::NotCollinear, "cross ratio needs collinear points");
    const Point dir = line.direction();
    const double pa = dot(a, dir), pb = dot(b, dir), pc = dot(c, dir), pd = dot(d, dir);
    return ((pa - pc) * (pb - pd)) / ((pb - pc) * (pa - pd));
}

// ---------------------------------------------------------------------------
// Polygons

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    const std::size_t m = vertices_.size();
    if (m < 3) fail(ErrorCode::InvalidPolygon, "polygon needs at least 3 vertices");
    for (const Point& p : vertices_)
        if (!is_finite(p)) fail(ErrorCode::InvalidPolygon, "polygon vertex is not finite");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (distance(vertices_[i], vertices_[j]) <= kEpsGeom)
                fail(ErrorCode::InvalidPolygon, "repeated polygon vertex " + std::to_string(j));
    double turning = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const Point p = vertex(i), q = vertex(i + 1), r = vertex(i + 2);
        if (signed_area2(p, q, r) <= kEpsGeom)
            fail(ErrorCode::InvalidPolygon, "polygon is not strictly convex and counter-clockwise at vertex " +
                                                std::to_string((i + 1) % m));
        turning += std::atan2(cross(q - p, r - q), dot(q - p, r - q));
    }
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6)
        fail(ErrorCode::InvalidPolygon, "polygon winds more than once");

    inward_.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Point a = vertex(i), b = vertex(i + 1);
        const Point d = b - a;
        const double n = norm(d);
        // left normal of a CCW edge points inside
        inward_.push_back({-d.y / n, d.x / n, (d.y * a.x - d.x * a.y) / n});
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) diameter_ = std::max(diameter_, distance(vertices_[i], vertices_[j]));
}

ConvexPolygon ConvexPolygon::hull_of(std::span<const Point> points) {
    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end(), [](Point a, Point b) { return distance(a, b) <= kEpsGeom; }),
              pts.end());
    if (pts.size() < 3) fail(ErrorCode::InvalidPolygon, "hull needs at least 3 distinct points");
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts) {
        while (k >= 2 && signed_area2(hull[k - 2], hull[k - 1], p) <= kEpsGeom) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        const Point p = pts[i];
        while (k >= lower && signed_area2(hull[k - 2], hull[k - 1], p) <= kEpsGeom) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return ConvexPolygon(std::move(hull));
}

double ConvexPolygon::boundary_distance(Point p) const {
    double d = inward_[0](p);
    for (const LineEq& e : inward_) d = std::min(d, e(p));
    return d;
}

std::optional<std::size_t> ConvexPolygon::edge_containing(Point p, double tol) const {
    for (std::size_t i = 0; i < size(); ++i)
        if (point_segment_distance(p, vertex(i), vertex(i + 1)) <= tol) return i;
    return std::nullopt;
}

double ConvexPolygon::boundary_param(Point p) const {
    std::size_t best = 0;
    double best_d = point_segment_distance(p, vertex(0), vertex(1));
    for (std::size_t i = 1; i < size(); ++i) {
        const double d = point_segment_distance(p, vertex(i), vertex(i + 1));
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    const Point a = vertex(best), b = vertex(best + 1);
    const double t = std::clamp(dot(p - a, b - a) / dot(b - a, b - a), 0.0, 1.0);
    double param = static_cast<double>(best) + t;
    if (param >= static_cast<double>(size())) param -= static_cast<double>(size());
    return param;
}

double ConvexPolygon::area() const { return polygon_area(vertices_); }
Point ConvexPolygon::centroid() const { return polygon_centroid(vertices_); }

double polygon_area(std::span<const Point> poly) {
    double a = 0.0;
    for (std::size_t i = 0, n = poly.size(); i < n; ++i) a += cross(poly[i], poly[(i + 1) % n]);
    return 0.5 * a;
}

Point polygon_centroid(std::span<const Point> poly) {
    const std::size_t n = poly.size();
    if (n == 0) return {};
    const Point o = poly[0];
    double a = 0.0;
    Point c{};
    for (std::size_t i = 0; i < n; ++i) {
        const Point p = poly[i] - o, q = poly[(i + 1) % n] - o;
        const double w = cross(p, q);
        a += w;
        c = c + w * (p + q);
    }
    if (std::abs(a) <= 1e-300) {
        Point m{};
        for (const Point& p : poly) m = m + p;
        return (1.0 / static_cast<double>(n)) * m;
    }
    return o + (1.0 / (3.0 * a)) * c;
}

bool point_in_polygon(std::span<const Point> poly, Point p) {
    bool inside = false;
    for (std::size_t i = 0, n = poly.size(), j = n - 1; i < n; j = i++) {
        const Point a = poly[i], b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) inside = !inside;
        }
    }
    return inside;
}

double polygon_boundary_distance(std::span<const Point> poly, Point p) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0, n = poly.size(); i < n; ++i) d = std::min(d, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
    return d;
}

std::vector<Point> clip_polygon_halfplane(std::span<const Point> poly, const LineEq& line, int side) {
    std::vector<Point> out;
    const std::size_t n = poly.size();
    if (n == 0) return out;
    const double scale = std::hypot(line.a, line.b);
    auto value = [&](Point p) {
        const double f = side * line(p) / scale;
        return std::abs(f) <= kClipEps ? 0.0 : f;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const Point p = poly[i], q = poly[(i + 1) % n];
        const double fp = value(p), fq = value(q);
        if (fp >= 0.0) out.push_back(p);
        if ((fp > 0.0 && fq < 0.0) || (fp < 0.0 && fq > 0.0)) out.push_back(lerp(p, q, fp / (fp - fq)));
    }
    std::vector<Point> clean;
    for (const Point& p : out)
        if (clean.empty() || distance(clean.back(), p) > 1e-15) clean.push_back(p);
    while (clean.size() > 1 && distance(clean.front(), clean.back()) <= 1e-15) clean.pop_back();
    if (clean.size() < 3) clean.clear();
    return clean;
}

// ---------------------------------------------------------------------------
// Projective maps

ProjectiveMap::ProjectiveMap() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}

ProjectiveMap::ProjectiveMap(const Matrix& m) : m_(m) {
    for (double v : m_)
        if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "projective map entry is not finite");
    if (std::abs(determinant()) <= kEpsSingular) fail(ErrorCode::InvalidArgument, "singular projective map");
}

ProjectiveMap ProjectiveMap::scaling(double sx, double sy) { return ProjectiveMap({sx, 0, 0, 0, sy, 0, 0, 0, 1}); }

double ProjectiveMap::determinant() const {
    const auto& a = m_;
    return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) + a[2] * (a[3] * a[7] - a[4] * a[6]);
}

HomogeneousPoint ProjectiveMap::apply(const HomogeneousPoint& p) const {
    const auto& a = m_;
    return {a[0] * p.x + a[1] * p.y + a[2] * p.w, a[3] * p.x + a[4] * p.y + a[5] * p.w,
            a[6] * p.x + a[7] * p.y + a[8] * p.w};
}

Point ProjectiveMap::apply(Point p) const {
    const HomogeneousPoint h = apply(HomogeneousPoint::from(p));
    if (std::abs(h.w) <= kEpsSingular) fail(ErrorCode::ImageAtInfinity, "image lies at infinity");
    return {h.x / h.w, h.y / h.w};
}

LineEq ProjectiveMap::apply(const LineEq& line) const {
    // l' = M^{-T} l; the adjugate transpose is enough since scale is irrelevant.
    const ProjectiveMap inv = inverse();
    const auto& b = inv.m_;
    return {b[0] * line.a + b[3] * line.b + b[6] * line.c, b[1] * line.a + b[4] * line.b + b[7] * line.c,
            b[2] * line.a + b[5] * line.b + b[8] * line.c};
}

Line ProjectiveMap::apply(const Line& line) const { return Line::from_eq(apply(line.eq())); }

ProjectiveMap ProjectiveMap::inverse() const {
    const auto& a = m_;
    const double det = determinant();
    Matrix inv{
        (a[4] * a[8] - a[5] * a[7]) / det, (a[2] * a[7] - a[1] * a[8]) / det, (a[1] * a[5] - a[2] * a[4]) / det,
        (a[5] * a[6] - a[3] * a[8]) / det, (a[0] * a[8] - a[2] * a[6]) / det, (a[2] * a[3] - a[0] * a[5]) / det,
        (a[3] * a[7] - a[4] * a[6]) / det, (a[1] * a[6] - a[0] * a[7]) / det, (a[0] * a[4] - a[1] * a[3]) / det,
    };
    return ProjectiveMap(inv);
}

ProjectiveMap operator*(const ProjectiveMap& a, const ProjectiveMap& b) {
    ProjectiveMap::Matrix c{};
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col)
            for (int k = 0; k < 3; ++k) c[r * 3 + col] += a(r, k) * b(k, col);
    return ProjectiveMap(c);
}

std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b, std::size_t n) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (std::abs(a[piv * n + col]) <= kEpsSingular) fail(ErrorCode::InvalidArgument, "singular linear system");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * x[c];
        x[i] = s / a[i * n + i];
    }
    return x;
}

ProjectiveMap map_quad_to_unit_square(Point p1, Point p2, Point p3, Point p4) {
    const std::array<Point, 4> p{p1, p2, p3, p4};
    const std::array<Point, 4> q{Point{0, 0}, Point{0, 1}, Point{1, 1}, Point{1, 0}};
    std::vector<double> m(64, 0.0), rhs(8);
    for (std::size_t i = 0; i < 4; ++i) {
        double* rx = &m[(2 * i) * 8];
        double* ry = &m[(2 * i + 1) * 8];
        rx[0] = p[i].x;
        rx[1] = p[i].y;
        rx[2] = 1.0;
        rx[6] = -p[i].x * q[i].x;
        rx[7] = -p[i].y * q[i].x;
        ry[3] = p[i].x;
        ry[4] = p[i].y;
        ry[5] = 1.0;
        ry[6] = -p[i].x * q[i].y;
        ry[7] = -p[i].y * q[i].y;
        rhs[2 * i] = q[i].x;
        rhs[2 * i + 1] = q[i].y;
    }
    std::vector<double> v;
    try {
        v = solve_linear(std::move(m), std::move(rhs), 8);
    } catch (const Error&) {
        fail(ErrorCode::DegenerateQuad, "quadrilateral corners are degenerate");
    }
    try {
        return ProjectiveMap({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], 1.0});
    } catch (const Error&) {
        fail(ErrorCode::DegenerateQuad, "quadrilateral corners are degenerate");
    }
}

ProjectiveMap map_triangle_to_unit_simplex(Point p, Point q, Point r) {
    if (std::abs(signed_area2(p, q, r)) <= kEpsSingular)
        fail(ErrorCode::DegenerateTriangle, "triangle corners are collinear");
    // Column form of the frame (a, b) -> a (p - r) + b (q - r) + r.
    const ProjectiveMap frame({p.x - r.x, q.x - r.x, r.x, p.y - r.y, q.y - r.y, r.y, 0.0, 0.0, 1.0});
    return frame.inverse();
}

}  // namespace hilbert
