#pragma once

// Polygons that are star-shaped around a common center, stored with one tag
// per edge so that the origin of every boundary piece survives intersection.

#include <cstddef>
#include <vector>

#include "hilbert/geometry.hpp"

namespace hilbert {

struct StarPolygon {
    Point center;
    /// Counter-clockwise around center; radial edges allowed.
    std::vector<Point> points;
    /// tags[i] labels the edge points[i] -> points[i+1].
    std::vector<std::size_t> tags;

    double area() const { return polygon_area(points); }
    bool contains(Point p) const { return point_in_polygon(points, p); }
    /// Euclidean distance from p to the nearest boundary edge.
    double boundary_distance(Point p) const { return polygon_boundary_distance(points, p); }
};

/// Intersection of two polygons star-shaped around the same center, taken as
/// the pointwise minimum of their radial functions. Output edges carry the
/// tag of the input edge they lie on; collinear runs from one edge are merged.
/// Throws Internal if an input is not star-shaped around the center.
StarPolygon star_intersection(const StarPolygon& p, const StarPolygon& q);

}  // namespace hilbert
