#pragma once

// Double-precision planar kernel: points, lines, homogeneous incidence,
// convex polygons, half-plane clipping and projective maps.

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "hilbert/error.hpp"

namespace hilbert {

/// Tolerance for orientation and incidence predicates.
inline constexpr double kEpsGeom = 1e-9;
/// Tolerance for pivots, determinants and homogeneous weights.
inline constexpr double kEpsSingular = 1e-12;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }
inline Point lerp(Point a, Point b, double t) { return a + t * (b - a); }

/// Point of the projective plane; w == 0 encodes a direction at infinity.
struct HomogeneousPoint {
    double x = 0.0;
    double y = 0.0;
    double w = 1.0;

    static HomogeneousPoint from(Point p) { return {p.x, p.y, 1.0}; }
    bool at_infinity() const;
    /// Euclidean point; throws ImageAtInfinity when w vanishes.
    Point to_point() const;
    /// Scaled to unit Euclidean norm of (x, y, w).
    HomogeneousPoint normalized() const;
};

/// Raw line equation a*x + b*y + c = 0, not normalized.
struct LineEq {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double operator()(Point p) const { return a * p.x + b * p.y + c; }
    double operator()(const HomogeneousPoint& p) const { return a * p.x + b * p.y + c * p.w; }
    LineEq operator-() const { return {-a, -b, -c}; }
};

/// Line u*x + v*y + l = 0 in canonical form: u^2 + v^2 = 1 and the first
/// nonzero of (u, v) positive.
class Line {
public:
    static Line from_coeffs(double u, double v, double l);
    static Line from_eq(const LineEq& eq) { return from_coeffs(eq.a, eq.b, eq.c); }
    static Line through(Point p, Point q);

    double u() const { return u_; }
    double v() const { return v_; }
    double l() const { return l_; }
    LineEq eq() const { return {u_, v_, l_}; }
    double eval(Point p) const { return u_ * p.x + v_ * p.y + l_; }
    Point direction() const { return {-v_, u_}; }

    bool approx_equal(const Line& other, double tol = kEpsGeom) const;

private:
    Line(double u, double v, double l) : u_(u), v_(v), l_(l) {}
    double u_, v_, l_;
};

struct Segment {
    Point a;
    Point b;

    Segment(Point a_, Point b_);
    double length() const { return distance(a, b); }
    Point at(double t) const { return lerp(a, b, t); }
};

int orient(Point p, Point q, Point r);
double signed_area2(Point p, Point q, Point r);

/// Intersection of two lines as the cross product of their coefficient
/// triples. Throws CoincidentLines when the lines agree.
HomogeneousPoint line_intersection(const Line& l1, const Line& l2);
HomogeneousPoint line_intersection(const LineEq& l1, const LineEq& l2);

double point_line_distance(const Line& line, Point p);
double point_segment_distance(Point p, Point a, Point b);

/// Cross ratio (a,b;c,d) of four distinct collinear points with signed
/// distances along the common line.
double cross_ratio(Point a, Point b, Point c, Point d);

/// Counter-clockwise convex polygon with strictly convex turns.
class ConvexPolygon {
public:
    /// Validates convexity, orientation and distinctness; throws InvalidPolygon.
    explicit ConvexPolygon(std::vector<Point> vertices);

    /// Accepts any point list whose hull is a proper polygon; drops
    /// duplicate and collinear vertices and fixes orientation.
    static ConvexPolygon hull_of(std::span<const Point> points);

    std::size_t size() const { return vertices_.size(); }
    const std::vector<Point>& vertices() const { return vertices_; }
    Point vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
    Segment edge_segment(std::size_t i) const { return {vertex(i), vertex(i + 1)}; }
    Line edge_line(std::size_t i) const { return Line::through(vertex(i), vertex(i + 1)); }
    /// Unit-normalized equation of edge i, positive on the interior side.
    const LineEq& inward(std::size_t i) const { return inward_[i % inward_.size()]; }

    /// Smallest inward distance to the edge lines; negative outside.
    double boundary_distance(Point p) const;
    bool contains(Point p, double tol = kEpsGeom) const { return boundary_distance(p) >= -tol; }
    /// Index of the lowest-index edge whose closed segment is within tol of p.
    std::optional<std::size_t> edge_containing(Point p, double tol) const;
    /// Position along the boundary in [0, m): edge index plus fraction.
    double boundary_param(Point p) const;

    double area() const;
    double diameter() const { return diameter_; }
    Point centroid() const;

private:
    std::vector<Point> vertices_;
    std::vector<LineEq> inward_;
    double diameter_ = 0.0;
};

double polygon_area(std::span<const Point> poly);
Point polygon_centroid(std::span<const Point> poly);
/// Even-odd test for a simple polygon.
bool point_in_polygon(std::span<const Point> poly, Point p);
/// Distance from p to the closed boundary of a polygon.
double polygon_boundary_distance(std::span<const Point> poly, Point p);

/// Keeps the part of a convex polygon where sign(line(p)) matches side
/// (points on the line are kept). Result is CCW and may be empty.
std::vector<Point> clip_polygon_halfplane(std::span<const Point> poly, const LineEq& line, int side);
inline std::vector<Point> clip_polygon_halfplane(std::span<const Point> poly, const Line& line, int side) {
    return clip_polygon_halfplane(poly, line.eq(), side);
}

/// 3x3 homogeneous transform acting on column vectors (x, y, 1).
class ProjectiveMap {
public:
    using Matrix = std::array<double, 9>;

    ProjectiveMap();  // identity
    /// Throws InvalidArgument when |det| <= kEpsSingular.
    explicit ProjectiveMap(const Matrix& m);

    static ProjectiveMap identity() { return {}; }
    static ProjectiveMap scaling(double sx, double sy);

    double operator()(int r, int c) const { return m_[r * 3 + c]; }
    const Matrix& matrix() const { return m_; }
    double determinant() const;

    HomogeneousPoint apply(const HomogeneousPoint& p) const;
    /// Throws ImageAtInfinity when the image weight is below kEpsSingular.
    Point apply(Point p) const;
    /// Lines transform by the inverse transpose.
    Line apply(const Line& line) const;
    LineEq apply(const LineEq& line) const;

    ProjectiveMap inverse() const;
    /// (a * b)(p) == a(b(p)).
    friend ProjectiveMap operator*(const ProjectiveMap& a, const ProjectiveMap& b);

private:
    Matrix m_;
};

/// Projective map sending p1..p4 to (0,0), (0,1), (1,1), (1,0) with t33 = 1.
ProjectiveMap map_quad_to_unit_square(Point p1, Point p2, Point p3, Point p4);
/// Affine map sending p -> (1,0), q -> (0,1), r -> (0,0).
ProjectiveMap map_triangle_to_unit_simplex(Point p, Point q, Point r);

/// Dense solve with partial pivoting; throws InvalidArgument when a pivot
/// falls below kEpsSingular.
std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b, std::size_t n);

}  // namespace hilbert
