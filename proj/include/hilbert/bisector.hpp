#pragma once

// Bisector conics of two sites inside one sector, their classification in
// the canonical frames, and tracing of the whole bisector through the
// sector arrangement.

#include <optional>
#include <vector>

#include "hilbert/metric.hpp"

namespace hilbert {

/// A*x^2 + B*x*y + C*y^2 + D*x + E*y + F = 0, with the sector constant k.
struct ConicCoefficients {
    double A = 0, B = 0, C = 0, D = 0, E = 0, F = 0;
    double k = 0;

    double operator()(Point p) const { return A * p.x * p.x + B * p.x * p.y + C * p.y * p.y + D * p.x + E * p.y + F; }
    Point gradient(Point p) const { return {2 * A * p.x + B * p.y + D, B * p.x + 2 * C * p.y + E}; }
    double max_abs() const;
    /// Coefficients divided by the one of largest magnitude (sign kept).
    ConicCoefficients normalized() const;
};

enum class ConicType { Ellipse, Parabola, Hyperbola, DegenerateLinear };

const char* to_string(ConicType type) noexcept;

struct ConicClass {
    ConicType tag = ConicType::Ellipse;
    double discriminant = 0.0;
};

/// Conic from four edge equations a, b, c, d (edges E_A..E_D, in any scale)
/// and the sites. Throws SiteOnEdgeLine when a denominator of k vanishes.
ConicCoefficients bisector_conic(const LineEq& a, const LineEq& b, const LineEq& c, const LineEq& d, Point s, Point t);
ConicCoefficients bisector_conic(const Sector& sector);

ConicClass classify_conic(const ConicCoefficients& c);

/// Discriminant of the conic in the frame E_A: x=0, E_B: x=1, E_C: y=0, E_D: y=1.
double four_edge_discriminant(Point s, Point t);
/// k in that same frame.
double four_edge_k(Point s, Point t);

/// Conic type in the unit simplex frame with E_A: y=0, E_B = E_C: x+y-1=0,
/// E_D: x=0, decided by the sign of (s_x+s_y-1)(t_x+t_y-1) - 4 s_y t_x.
/// Throws SiteOutsideFrame.
ConicClass three_edge_conic_type(Point s, Point t);
/// Edge equations of that simplex frame in E_A, E_B, E_C, E_D order.
std::array<LineEq, 4> simplex_frame();
/// Edge equations of the two-edge frame E_A = E_D: x=0, E_B = E_C: y=0.
std::array<LineEq, 4> two_edge_frame();
/// Edge equations of the unit square frame used by four_edge_discriminant.
std::array<LineEq, 4> square_frame();

/// Line in the other site's coordinates on which the simplex-frame conic is
/// a parabola; the type flips across it.
Line conic_type_separating_line(Point fixed);

/// Linear factors of a conic that splits into lines. Throws NotDegenerate.
std::vector<LineEq> degenerate_factor(const ConicCoefficients& c);

struct BisectorPiece {
    Sector sector;
    ConicCoefficients conic;
    std::vector<Point> polyline;
    /// The piece is a straight line lying on a cell edge shared with a
    /// neighbouring sector.
    bool on_spoke = false;
};

struct BisectorCurve {
    std::vector<BisectorPiece> pieces;
    Point start;
    Point end;
    /// Largest distance between consecutive piece endpoints.
    double max_gap = 0.0;

    /// All samples in order with junction duplicates removed.
    std::vector<Point> polyline() const;
    /// Index of the piece that produced each segment of polyline().
    std::vector<std::size_t> segment_pieces() const;
};

inline constexpr double kSamplingFactor = 1e-3;
inline constexpr double kEpsStitch = 1e-6;

double sampling_tolerance(const ConvexPolygon& domain);

/// Samples of the zero set of a conic inside a convex cell, one polyline
/// per connected arc, each refined until the sagitta is at most tol.
std::vector<std::vector<Point>> conic_arcs_in_cell(const ConicCoefficients& conic, std::span<const Point> cell,
                                                   double tol);

/// Throws DegeneratePair when the bisector contains a 2-D region and
/// PointsCoincide for equal sites.
BisectorCurve trace_bisector(const ConvexPolygon& domain, Point s, Point t);

}  // namespace hilbert
