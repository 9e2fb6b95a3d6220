#include "hilbert/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hilbert {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Equidistance band of the radial construction.
constexpr double kTieBand = 1e-9;
// Half-width of the angular gap sampled around a critical direction.
constexpr double kCriticalGap = 1e-9;
constexpr int kBaseDirections = 64;

// Hilbert distance from an interior point a to a point p that may lie
// arbitrarily close to the boundary.
double distance_to_near_boundary(const ConvexPolygon& domain, Point a, Point p) {
    if (a == p) return 0.0;
    const Point d = p - a;
    const double len = norm(d);
    const double ahead = ray_exit(domain, a, d).t;
    const double behind = ray_exit(domain, a, -1.0 * d).t;
    if (len >= ahead) return std::numeric_limits<double>::infinity();
    return 0.5 * (-std::log1p(-len / ahead) + std::log1p(len / behind));
}

Point snap_to_boundary(const ConvexPolygon& domain, Point p) {
    const double param = domain.boundary_param(p);
    const auto edge = static_cast<std::size_t>(param);
    return lerp(domain.vertex(edge), domain.vertex(edge + 1), param - static_cast<double>(edge));
}

struct Side {
    std::vector<Point> points;
    std::vector<long> edges;  // segment of the path, or -1 - boundary edge
};

// Closes a boundary-to-boundary path by walking the domain boundary
// counter-clockwise from its last point back to its first.
Side close_path(const ConvexPolygon& domain, const std::vector<Point>& path, bool reversed) {
    const std::size_t m = domain.size();
    const std::size_t segments = path.size() - 1;
    Side side;
    for (std::size_t i = 0; i < path.size(); ++i) {
        side.points.push_back(path[i]);
        if (i < segments) side.edges.push_back(static_cast<long>(reversed ? segments - 1 - i : i));
    }
    const double from = domain.boundary_param(path.back());
    const double to = domain.boundary_param(path.front());
    const double md = static_cast<double>(m);
    double span = to - from;
    if (span <= 0.0) span += md;
    std::vector<std::pair<double, std::size_t>> corners;
    for (std::size_t v = 0; v < m; ++v) {
        double offset = static_cast<double>(v) - from;
        if (offset <= 1e-12) offset += md;
        if (offset < span - 1e-12) corners.push_back({offset, v});
    }
    std::sort(corners.begin(), corners.end());
    std::vector<Point> walk{path.back()};
    for (const auto& [offset, v] : corners) walk.push_back(domain.vertex(v));
    walk.push_back(path.front());
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        if (i > 0) side.points.push_back(walk[i]);
        const Point mid = lerp(walk[i], walk[i + 1], 0.5);
        const auto edge = static_cast<long>(domain.boundary_param(mid)) % static_cast<long>(m);
        side.edges.push_back(-1 - edge);
    }
    return side;
}

struct RadialSample {
    double theta;
    Point p;
    bool on_boundary;
};

class RadialBoundary {
public:
    RadialBoundary(const ConvexPolygon& domain, Point inner, Point owner, double tol)
        : domain_(domain), inner_(inner), owner_(owner), tol_(tol) {}

    RadialSample sample(double theta) const {
        const Point d{std::cos(theta), std::sin(theta)};
        const double exit = ray_exit(domain_, inner_, d).t;
        const double reach = exit * (1.0 - 1e-6);
        if (strictly_inner(inner_ + reach * d)) return {theta, inner_ + exit * d, true};
        double lo = 0.0, hi = reach;
        for (int it = 0; it < 64 && hi - lo > 1e-15 * exit; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (strictly_inner(inner_ + mid * d))
                lo = mid;
            else
                hi = mid;
        }
        return {theta, inner_ + (0.5 * (lo + hi)) * d, false};
    }

    // Appends samples strictly after a and up to and including b.
    void refine(const RadialSample& a, const RadialSample& b, std::vector<RadialSample>& out, int depth) const {
        const double width = b.theta - a.theta;
        if (a.on_boundary != b.on_boundary) {
            if (width > 1e-12 && depth < 80) {
                const RadialSample mid = sample(0.5 * (a.theta + b.theta));
                refine(a, mid, out, depth + 1);
                refine(mid, b, out, depth + 1);
                return;
            }
        } else if (!a.on_boundary && width > 1e-10 && depth < 60) {
            const RadialSample mid = sample(0.5 * (a.theta + b.theta));
            if (point_segment_distance(mid.p, a.p, b.p) > tol_) {
                refine(a, mid, out, depth + 1);
                refine(mid, b, out, depth + 1);
                return;
            }
        }
        out.push_back(b);
    }

private:
    bool strictly_inner(Point p) const {
        return distance_to_near_boundary(domain_, inner_, p) - distance_to_near_boundary(domain_, owner_, p) < -kTieBand;
    }

    const ConvexPolygon& domain_;
    Point inner_, owner_;
    double tol_;
};

// Boundary of {p : H(inner, p) < H(owner, p)} away from the domain boundary,
// ordered counter-clockwise around inner.
std::vector<Point> radial_split(const ConvexPolygon& domain, Point inner, Point owner, const DegeneracyReport& report) {
    const RadialBoundary rb(domain, inner, owner, 0.25 * sampling_tolerance(domain));
    std::vector<double> angles;
    for (int k = 0; k < kBaseDirections; ++k) angles.push_back(kTwoPi * k / kBaseDirections);
    auto add_direction = [&](Point target) {
        const Point d = target - inner;
        if (norm(d) <= 0.0) return;
        for (double base : {std::atan2(d.y, d.x), std::atan2(-d.y, -d.x)})
            for (double off : {-kCriticalGap, kCriticalGap}) angles.push_back(base + off);
    };
    for (const Point& v : domain.vertices()) add_direction(v);
    for (const ConvexPolygon& region : report.regions)
        for (const Point& v : region.vertices()) add_direction(v);
    for (double& a : angles) a = std::fmod(std::fmod(a, kTwoPi) + kTwoPi, kTwoPi);
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end()), angles.end());

    std::vector<RadialSample> samples;
    RadialSample prev = rb.sample(angles.front());
    const RadialSample first = prev;
    samples.push_back(prev);
    for (std::size_t i = 1; i <= angles.size(); ++i) {
        RadialSample next = i < angles.size() ? rb.sample(angles[i]) : RadialSample{first.theta + kTwoPi, first.p, first.on_boundary};
        rb.refine(prev, next, samples, 0);
        prev = next;
    }
    samples.pop_back();  // repeated first sample

    const std::size_t n = samples.size();
    std::size_t runs = 0, start = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (!samples[i].on_boundary && samples[(i + n - 1) % n].on_boundary) {
            ++runs;
            start = i;
        }
    }
    if (runs != 1) fail(ErrorCode::Internal, "separating curve of a degenerate pair is not a single arc");
    std::vector<Point> path{snap_to_boundary(domain, samples[(start + n - 1) % n].p)};
    std::size_t i = start;
    while (!samples[i].on_boundary) {
        path.push_back(samples[i].p);
        i = (i + 1) % n;
    }
    path.push_back(snap_to_boundary(domain, samples[i].p));
    return path;
}

}  // namespace

PairRegions split_pair(const ConvexPolygon& domain, const Site& a, const Site& b) {
    const bool a_first = a.id < b.id;
    const Site& lo = a_first ? a : b;
    const Site& hi = a_first ? b : a;
    PairRegions out;
    out.split.site_a = lo.id;
    out.split.site_b = hi.id;
    out.degeneracy = detect_degenerate_pair(domain, lo.pos, hi.pos);
    std::vector<Point> path;
    if (out.degeneracy) {
        out.degeneracy->site_a = lo.id;
        out.degeneracy->site_b = hi.id;
        out.degeneracy->tie_owner = lo.id;
        out.split.degenerate = true;
        path = radial_split(domain, hi.pos, lo.pos, *out.degeneracy);
        out.split.segment_piece.assign(path.size() - 1, -1);
    } else {
        const BisectorCurve curve = trace_bisector(domain, lo.pos, hi.pos);
        path = curve.polyline();
        for (const BisectorPiece& piece : curve.pieces)
            out.split.pieces.push_back({piece.sector.edges, piece.conic, piece.on_spoke});
        for (std::size_t p : curve.segment_pieces()) out.split.segment_piece.push_back(static_cast<int>(p));
        path.front() = snap_to_boundary(domain, path.front());
        path.back() = snap_to_boundary(domain, path.back());
    }
    if (path.size() < 2) fail(ErrorCode::Internal, "separating curve has fewer than two points");
    out.split.polyline = path;

    std::vector<Point> reversed(path.rbegin(), path.rend());
    Side one = close_path(domain, path, false);
    Side two = close_path(domain, reversed, true);
    if (!point_in_polygon(one.points, lo.pos)) std::swap(one, two);
    if (!point_in_polygon(one.points, lo.pos) || !point_in_polygon(two.points, hi.pos))
        fail(ErrorCode::Internal, "separating curve does not split the sites");
    if (a_first) {
        out.side_a = std::move(one.points);
        out.side_a_edges = std::move(one.edges);
        out.side_b = std::move(two.points);
        out.side_b_edges = std::move(two.edges);
    } else {
        out.side_a = std::move(two.points);
        out.side_a_edges = std::move(two.edges);
        out.side_b = std::move(one.points);
        out.side_b_edges = std::move(one.edges);
    }
    return out;
}

VoronoiDiagram::VoronoiDiagram(ConvexPolygon domain) : domain_(std::move(domain)) {
    for (std::size_t e = 0; e < domain_.size(); ++e) sources_.push_back({EdgeSource::Kind::Boundary, e, 0, 0});
}

std::size_t VoronoiDiagram::index_of(const std::string& id) const {
    const auto it = std::lower_bound(sites_.begin(), sites_.end(), id, [](const Site& s, const std::string& key) { return s.id < key; });
    if (it == sites_.end() || it->id != id) fail(ErrorCode::UnknownSite, "unknown site");
    return static_cast<std::size_t>(it - sites_.begin());
}

bool VoronoiDiagram::has_site(const std::string& id) const {
    return std::any_of(sites_.begin(), sites_.end(), [&](const Site& s) { return s.id == id; });
}

const Site& VoronoiDiagram::site(const std::string& id) const { return sites_[index_of(id)]; }
const VoronoiCell& VoronoiDiagram::cell(const std::string& id) const { return cells_[index_of(id)]; }

VoronoiDiagram VoronoiDiagram::insert_site(const Site& site) const {
    if (site.id.empty()) fail(ErrorCode::InvalidArgument, "site id is empty");
    if (!is_finite(site.pos)) fail(ErrorCode::InvalidArgument, "site position is not finite");
    if (has_site(site.id)) fail(ErrorCode::DuplicateSite, "duplicate site id '" + site.id + "'");
    if (!is_interior(domain_, site.pos)) fail(ErrorCode::SiteTooCloseToBoundary, "site '" + site.id + "' is not strictly inside the domain");
    for (const Site& s : sites_)
        if (distance(s.pos, site.pos) < kEpsGeom * std::max(1.0, domain_.diameter()))
            fail(ErrorCode::SiteCoincident, "site '" + site.id + "' coincides with '" + s.id + "'");

    VoronoiDiagram next = *this;
    StarPolygon fresh{site.pos, domain_.vertices(), {}};
    for (std::size_t e = 0; e < domain_.size(); ++e) fresh.tags.push_back(e);

    auto tag_side = [&](Point center, const std::vector<Point>& pts, const std::vector<long>& edges, std::size_t base) {
        StarPolygon star{center, pts, {}};
        for (long code : edges)
            star.tags.push_back(code < 0 ? static_cast<std::size_t>(-1 - code) : base + static_cast<std::size_t>(code));
        return star;
    };

    for (std::size_t i = 0; i < sites_.size(); ++i) {
        const Site& old = sites_[i];
        PairRegions pr = split_pair(domain_, old, site);
        const std::size_t pair_index = next.pairs_.size();
        const std::size_t base = next.sources_.size();
        for (std::size_t seg = 0; seg + 1 < pr.split.polyline.size(); ++seg)
            next.sources_.push_back({EdgeSource::Kind::Bisector, 0, pair_index, seg});
        next.cells_[i].region = star_intersection(next.cells_[i].region, tag_side(old.pos, pr.side_a, pr.side_a_edges, base));
        fresh = star_intersection(fresh, tag_side(site.pos, pr.side_b, pr.side_b_edges, base));
        if (pr.degeneracy) next.degeneracies_.push_back(std::move(*pr.degeneracy));
        next.pairs_.push_back(std::move(pr.split));
    }

    const auto pos = std::lower_bound(next.sites_.begin(), next.sites_.end(), site.id,
                                      [](const Site& s, const std::string& key) { return s.id < key; });
    const auto offset = pos - next.sites_.begin();
    next.sites_.insert(pos, site);
    next.cells_.insert(next.cells_.begin() + offset, VoronoiCell{site.id, std::move(fresh)});
    return next;
}

VoronoiDiagram VoronoiDiagram::remove_site(const std::string& id) const {
    std::vector<Site> rest = sites_;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(index_of(id)));
    return build_diagram(domain_, std::move(rest));
}

VoronoiDiagram VoronoiDiagram::move_site(const std::string& id, Point pos) const {
    std::vector<Site> moved = sites_;
    const std::size_t i = index_of(id);
    if (!is_finite(pos)) fail(ErrorCode::InvalidArgument, "site position is not finite");
    if (!is_interior(domain_, pos)) fail(ErrorCode::SiteTooCloseToBoundary, "site '" + id + "' is not strictly inside the domain");
    moved[i].pos = pos;
    return build_diagram(domain_, std::move(moved));
}

VoronoiDiagram build_diagram(const ConvexPolygon& domain, std::vector<Site> sites) {
    std::sort(sites.begin(), sites.end(), [](const Site& a, const Site& b) { return a.id < b.id; });
    VoronoiDiagram diagram(domain);
    for (const Site& s : sites) diagram = diagram.insert_site(s);
    return diagram;
}

std::string nearest_site(const VoronoiDiagram& diagram, Point q) {
    if (diagram.sites().empty()) fail(ErrorCode::EmptyDiagram, "diagram has no sites");
    require_interior(diagram.domain(), q);
    std::vector<double> d;
    double best = std::numeric_limits<double>::infinity();
    for (const Site& s : diagram.sites()) {
        d.push_back(hilbert_distance(diagram.domain(), s.pos, q));
        best = std::min(best, d.back());
    }
    // sites are sorted by id, so the first within the tie band is the smallest
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] <= best + kNearestTie) return diagram.sites()[i].id;
    return diagram.sites().front().id;
}

GridCheck grid_check(const VoronoiDiagram& diagram, std::size_t n) {
    GridCheck result;
    const ConvexPolygon& domain = diagram.domain();
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x, lo_y = lo_x, hi_y = -lo_x;
    for (const Point& p : domain.vertices()) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    }
    const double band = sampling_tolerance(domain);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Point q{lo_x + (hi_x - lo_x) * (static_cast<double>(i) + 0.5) / static_cast<double>(n),
                          lo_y + (hi_y - lo_y) * (static_cast<double>(j) + 0.5) / static_cast<double>(n)};
            ++result.samples;
            if (diagram.sites().empty() || !is_interior(domain, q) || domain.boundary_distance(q) <= band) {
                ++result.skipped;
                continue;
            }
            bool near_edge = false;
            const VoronoiCell* owner = nullptr;
            for (const VoronoiCell& cell : diagram.cells()) {
                if (cell.region.boundary_distance(q) <= band) {
                    near_edge = true;
                    break;
                }
                if (!owner && cell.region.contains(q)) owner = &cell;
            }
            if (near_edge) {
                ++result.skipped;
                continue;
            }
            if (!owner || owner->site != nearest_site(diagram, q)) ++result.mismatches;
        }
    }
    return result;
}

}  // namespace hilbert
