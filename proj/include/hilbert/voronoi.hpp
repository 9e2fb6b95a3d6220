#pragma once

// Incremental Hilbert Voronoi diagram over a convex polygon. Diagrams are
// immutable values: every update returns a new diagram.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hilbert/bisector.hpp"
#include "hilbert/degeneracy.hpp"
#include "hilbert/star.hpp"

namespace hilbert {

struct Site {
    std::string id;
    Point pos;

    friend bool operator==(const Site&, const Site&) = default;
};

/// Origin of one boundary edge of a cell.
struct EdgeSource {
    enum class Kind { Boundary, Bisector };
    Kind kind = Kind::Boundary;
    std::size_t boundary_edge = 0;  // Boundary: edge of the domain
    std::size_t pair = 0;           // Bisector: index into VoronoiDiagram::pairs()
    std::size_t segment = 0;        // Bisector: segment of the pair's split polyline
};

struct SplitPiece {
    SectorLabel edges;
    ConicCoefficients conic;
    bool on_spoke = false;
};

/// Curve separating the two sites of a pair, from boundary to boundary.
struct PairSplit {
    std::string site_a;  // smaller id
    std::string site_b;
    bool degenerate = false;
    std::vector<Point> polyline;
    /// Piece index of every polyline segment; -1 where the curve borders a
    /// two-dimensional equidistant region.
    std::vector<int> segment_piece;
    std::vector<SplitPiece> pieces;
};

struct VoronoiCell {
    std::string site;
    StarPolygon region;  // tags index VoronoiDiagram::sources()
};

class VoronoiDiagram {
public:
    explicit VoronoiDiagram(ConvexPolygon domain);

    const ConvexPolygon& domain() const { return domain_; }
    /// Sorted by id; cells()[i] belongs to sites()[i].
    const std::vector<Site>& sites() const { return sites_; }
    const std::vector<VoronoiCell>& cells() const { return cells_; }
    const std::vector<DegeneracyReport>& degeneracies() const { return degeneracies_; }
    const std::vector<PairSplit>& pairs() const { return pairs_; }
    const std::vector<EdgeSource>& sources() const { return sources_; }

    bool has_site(const std::string& id) const;
    /// Throws UnknownSite.
    const Site& site(const std::string& id) const;
    const VoronoiCell& cell(const std::string& id) const;

    /// Throws DuplicateSite, SiteTooCloseToBoundary or SiteCoincident.
    VoronoiDiagram insert_site(const Site& site) const;
    /// Rebuilds from the remaining sites. Throws UnknownSite.
    VoronoiDiagram remove_site(const std::string& id) const;
    /// Rebuilds with the site at its new position. Throws UnknownSite or
    /// SiteTooCloseToBoundary.
    VoronoiDiagram move_site(const std::string& id, Point pos) const;

private:
    std::size_t index_of(const std::string& id) const;

    ConvexPolygon domain_;
    std::vector<Site> sites_;
    std::vector<VoronoiCell> cells_;
    std::vector<DegeneracyReport> degeneracies_;
    std::vector<PairSplit> pairs_;
    std::vector<EdgeSource> sources_;
};

/// Inserts the sites in id order.
VoronoiDiagram build_diagram(const ConvexPolygon& domain, std::vector<Site> sites);

/// Closest site in the Hilbert metric; ties within kNearestTie go to the
/// smaller id. Throws EmptyDiagram.
inline constexpr double kNearestTie = 1e-10;
std::string nearest_site(const VoronoiDiagram& diagram, Point q);

/// Boundary curve between two sites and the polygons on either side of it.
/// The first polygon contains a, the second contains b. Ties inside a
/// two-dimensional equidistant region go to the site with the smaller id.
struct PairRegions {
    PairSplit split;
    std::vector<Point> side_a;
    std::vector<Point> side_b;
    /// Per polygon edge: segment index of split.polyline, or -1 - e for
    /// edge e of the domain.
    std::vector<long> side_a_edges;
    std::vector<long> side_b_edges;
    std::optional<DegeneracyReport> degeneracy;
};
PairRegions split_pair(const ConvexPolygon& domain, const Site& a, const Site& b);

/// Result of comparing cell membership with nearest_site on an n x n grid
/// over the bounding box of the domain.
struct GridCheck {
    std::size_t samples = 0;
    std::size_t skipped = 0;  // outside, near the boundary or near a cell edge
    std::size_t mismatches = 0;
};
GridCheck grid_check(const VoronoiDiagram& diagram, std::size_t n);

}  // namespace hilbert
