#pragma once

// Pair-level analysis around vanishing points: two-dimensional bisectors,
// the quadrilateral Z between two sites and crossing events under motion.

#include <optional>
#include <string>
#include <vector>

#include "hilbert/metric.hpp"

namespace hilbert {

struct DegeneracyReport {
    std::string site_a;  // filled in by the diagram; empty for bare queries
    std::string site_b;
    std::string tie_owner;
    std::size_t edge_i = 0;
    std::size_t edge_j = 0;
    HomogeneousPoint vanishing_point;
    /// Equidistant sectors: points whose chords from both sites leave
    /// through edge_i behind and edge_j ahead, or the reverse.
    std::vector<ConvexPolygon> regions;
};

/// Vanishing point of the supporting lines of edges i and j.
HomogeneousPoint vanishing_point(const ConvexPolygon& domain, std::size_t i, std::size_t j);

/// Residual of s, t and a homogeneous point being collinear.
double incidence_residual(Point s, Point t, const HomogeneousPoint& o);

std::optional<DegeneracyReport> detect_degenerate_pair(const ConvexPolygon& domain, Point s, Point t);

struct ZRegion {
    ConvexPolygon quad;
};

/// Throws DegeneratePair when s and t are collinear with a vanishing point.
ZRegion z_region(const ConvexPolygon& domain, Point s, Point t);

struct CrossingEvent {
    double u = 0.0;
    HomogeneousPoint vanishing_point;
    std::size_t edge_i = 0;
    std::size_t edge_j = 0;
};

/// Parameters u in [0,1] where motion(u) lines up with `other` and a
/// vanishing point such that the pair becomes degenerate; ascending.
std::vector<CrossingEvent> crossing_events(const ConvexPolygon& domain, const Segment& motion, Point other);

}  // namespace hilbert
