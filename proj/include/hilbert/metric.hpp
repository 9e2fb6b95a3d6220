#pragma once

// Funk and Hilbert distances on the interior of a convex polygon, together
// with the chord, spoke and sector machinery the bisector code builds on.

#include <array>
#include <cstddef>
#include <vector>

#include "hilbert/geometry.hpp"

namespace hilbert {

/// Sites closer than this fraction of the diameter to the boundary are rejected.
inline constexpr double kInteriorFactor = 1e-6;

double interior_tolerance(const ConvexPolygon& domain);
bool is_interior(const ConvexPolygon& domain, Point p);
/// Throws PointNotInterior.
void require_interior(const ConvexPolygon& domain, Point p);

/// Where the ray origin + t*dir (t > 0) leaves the polygon. When the exit is
/// a vertex the lower edge index wins.
struct RayExit {
    Point point;
    std::size_t edge = 0;
    double t = 0.0;
};
RayExit ray_exit(const ConvexPolygon& domain, Point origin, Point dir);

/// Chord through s and t with endpoints ordered x, s, t, y.
struct Chord {
    Point x_end;
    Point y_end;
    std::size_t x_edge = 0;
    std::size_t y_edge = 0;
};

Chord chord(const ConvexPolygon& domain, Point s, Point t);

/// Forward Funk distance ln(|s - y| / |t - y|), y the exit beyond t.
double funk_distance(const ConvexPolygon& domain, Point s, Point t);
double hilbert_distance(const ConvexPolygon& domain, Point s, Point t);

/// True when both boundary-point triples of the additivity criterion are
/// collinear, in which case H(a,b) + H(b,c) == H(a,c).
bool geodesic_additivity_holds(const ConvexPolygon& domain, Point a, Point b, Point c);

struct Spoke {
    Point site;
    std::size_t vertex = 0;
    Point forward_end;           // exit of the ray vertex -> site
    std::size_t forward_edge = 0;
    Point backward_end;          // the vertex itself
};

std::vector<Spoke> spokes(const ConvexPolygon& domain, Point s);

/// Boundary edges crossed by chi(s,p) behind s / beyond p (a, b) and by
/// chi(t,p) behind t / beyond p (c, d).
struct SectorLabel {
    std::size_t a = 0, b = 0, c = 0, d = 0;
    friend bool operator==(const SectorLabel&, const SectorLabel&) = default;
};

SectorLabel sector_label(const ConvexPolygon& domain, Point s, Point t, Point p);

struct Sector {
    ConvexPolygon region;
    SectorLabel edges;
    /// Inward unit equations of the four labelled edges, in label order.
    std::array<LineEq, 4> lines;
    Point s;
    Point t;
};

/// Cells of the arrangement cut by the spokes of both sites, labelled at
/// their centroids. Throws PointsCoincide.
std::vector<Sector> sector_decomposition(const ConvexPolygon& domain, Point s, Point t);

/// The point p on the ray from s along dir with H(s, p) == r.
Point point_at_distance(const ConvexPolygon& domain, Point s, Point dir, double r);

struct HilbertBall {
    Point center;
    double radius = 0.0;
    ConvexPolygon boundary;
};

HilbertBall hilbert_ball(const ConvexPolygon& domain, Point s, double r);

}  // namespace hilbert
