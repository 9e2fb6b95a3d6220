#include "hilbert/bisector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "hilbert/degeneracy.hpp"

namespace hilbert {

double ConicCoefficients::max_abs() const {
    return std::max({std::abs(A), std::abs(B), std::abs(C), std::abs(D), std::abs(E), std::abs(F)});
}

ConicCoefficients ConicCoefficients::normalized() const {
    const double s = max_abs();
    if (!(s > 0.0)) fail(ErrorCode::InvalidArgument, "conic has all coefficients zero");
    return {A / s, B / s, C / s, D / s, E / s, F / s, k};
}

const char* to_string(ConicType type) noexcept {
    switch (type) {
    case ConicType::Ellipse: return "ellipse";
    case ConicType::Parabola: return "parabola";
    case ConicType::Hyperbola: return "hyperbola";
    case ConicType::DegenerateLinear: return "degenerate";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Conic construction

ConicCoefficients bisector_conic(const LineEq& a, const LineEq& b, const LineEq& c, const LineEq& d, Point s, Point t) {
    const double as = a(s), bs = b(s), ct = c(t), dt = d(t);
    auto off_line = [](const LineEq& l, double value) {
        return std::abs(value) > kEpsSingular * std::max(1.0, std::hypot(l.a, l.b));
    };
    if (!off_line(a, as) || !off_line(b, bs) || !off_line(c, ct) || !off_line(d, dt))
        fail(ErrorCode::SiteOnEdgeLine, "site lies on a sector edge line");
    // k = [(b.s)(c.t)] / [(d.t)(a.s)]; the bisector is (c.p)(b.p) = k (a.p)(d.p).
    const double k = (bs * ct) / (dt * as);
    ConicCoefficients out;
    out.k = k;
    out.A = b.a * c.a - a.a * d.a * k;
    out.B = b.b * c.a + b.a * c.b - a.a * d.b * k - a.b * d.a * k;
    out.C = b.b * c.b - a.b * d.b * k;
    out.D = b.c * c.a + c.c * b.a - a.c * d.a * k - a.a * d.c * k;
    out.E = b.c * c.b + b.b * c.c - a.b * d.c * k - a.c * d.b * k;
    out.F = b.c * c.c - a.c * d.c * k;
    return out;
}

ConicCoefficients bisector_conic(const Sector& sector) {
    return bisector_conic(sector.lines[0], sector.lines[1], sector.lines[2], sector.lines[3], sector.s, sector.t);
}

// ---------------------------------------------------------------------------
// Classification

namespace {

using Sym3 = std::array<double, 9>;

Sym3 conic_matrix(const ConicCoefficients& c) {
    return {c.A, c.B / 2, c.D / 2, c.B / 2, c.C, c.E / 2, c.D / 2, c.E / 2, c.F};
}

double det3(const Sym3& m) {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) + m[2] * (m[3] * m[7] - m[4] * m[6]);
}

Sym3 adjugate(const Sym3& m) {
    return {
        m[4] * m[8] - m[5] * m[7], m[2] * m[7] - m[1] * m[8], m[1] * m[5] - m[2] * m[4],
        m[5] * m[6] - m[3] * m[8], m[0] * m[8] - m[2] * m[6], m[2] * m[3] - m[0] * m[5],
        m[3] * m[7] - m[4] * m[6], m[1] * m[6] - m[0] * m[7], m[0] * m[4] - m[1] * m[3],
    };
}

constexpr double kRankEps = 1e-10;

}  // namespace

ConicClass classify_conic(const ConicCoefficients& c) {
    const ConicCoefficients n = c.normalized();
    const double disc = c.B * c.B - 4.0 * c.A * c.C;
    if (std::abs(det3(conic_matrix(n))) <= kRankEps) return {ConicType::DegenerateLinear, disc};
    const double eps = 1e-9 * std::max({c.A * c.A, c.B * c.B, c.C * c.C, 1.0});
    if (std::abs(disc) <= eps) return {ConicType::Parabola, disc};
    return {disc < 0.0 ? ConicType::Ellipse : ConicType::Hyperbola, disc};
}

std::vector<LineEq> degenerate_factor(const ConicCoefficients& c) {
    if (classify_conic(c).tag != ConicType::DegenerateLinear) fail(ErrorCode::NotDegenerate, "conic does not split into lines");
    const Sym3 m = conic_matrix(c.normalized());
    const Sym3 adj = adjugate(m);
    const double adj_max = *std::max_element(adj.begin(), adj.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });

    std::vector<LineEq> lines;
    auto keep = [&](double a, double b, double cc) {
        if (std::hypot(a, b) > kRankEps) lines.push_back({a, b, cc});  // drop the line at infinity
    };

    if (std::abs(adj_max) <= kRankEps) {
        // rank one: a double line
        std::size_t i = 0;
        for (std::size_t j = 1; j < 3; ++j)
            if (std::abs(m[j * 4]) > std::abs(m[i * 4])) i = j;
        keep(m[i], m[3 + i], m[6 + i]);
        if (lines.empty()) fail(ErrorCode::NotDegenerate, "conic has no affine line");
        return lines;
    }

    std::size_t i = 0;
    for (std::size_t j = 1; j < 3; ++j)
        if (std::abs(adj[j * 4]) > std::abs(adj[i * 4])) i = j;
    if (adj[i * 4] > kRankEps) fail(ErrorCode::NotDegenerate, "conic splits into a complex line pair");
    const double beta = std::sqrt(std::max(0.0, -adj[i * 4]));
    const std::array<double, 3> p{adj[i] / beta, adj[3 + i] / beta, adj[6 + i] / beta};
    // m + [p]_x is the rank-one product of the two lines.
    Sym3 r = m;
    r[1] -= p[2];
    r[2] += p[1];
    r[3] += p[2];
    r[5] -= p[0];
    r[6] -= p[1];
    r[7] += p[0];
    std::size_t best = 0;
    for (std::size_t j = 1; j < 9; ++j)
        if (std::abs(r[j]) > std::abs(r[best])) best = j;
    const std::size_t row = best / 3, col = best % 3;
    keep(r[row * 3], r[row * 3 + 1], r[row * 3 + 2]);
    keep(r[col], r[3 + col], r[6 + col]);
    if (lines.empty()) fail(ErrorCode::NotDegenerate, "conic has no affine line");
    return lines;
}

// ---------------------------------------------------------------------------
// Canonical frames

std::array<LineEq, 4> simplex_frame() { return {LineEq{0, 1, 0}, LineEq{1, 1, -1}, LineEq{1, 1, -1}, LineEq{1, 0, 0}}; }
std::array<LineEq, 4> two_edge_frame() { return {LineEq{1, 0, 0}, LineEq{0, 1, 0}, LineEq{0, 1, 0}, LineEq{1, 0, 0}}; }
std::array<LineEq, 4> square_frame() { return {LineEq{1, 0, 0}, LineEq{1, 0, -1}, LineEq{0, 1, 0}, LineEq{0, 1, -1}}; }

double four_edge_k(Point s, Point t) {
    const auto f = square_frame();
    return bisector_conic(f[0], f[1], f[2], f[3], s, t).k;
}

double four_edge_discriminant(Point s, Point t) {
    const auto f = square_frame();
    const ConicCoefficients c = bisector_conic(f[0], f[1], f[2], f[3], s, t);
    return c.B * c.B - 4.0 * c.A * c.C;
}

namespace {

void require_in_simplex(Point p) {
    if (!(p.x > 0.0 && p.y > 0.0 && p.x + p.y < 1.0)) fail(ErrorCode::SiteOutsideFrame, "site is outside the unit simplex");
}

}  // namespace

ConicClass three_edge_conic_type(Point s, Point t) {
    require_in_simplex(s);
    require_in_simplex(t);
    // k - 4 = sigma / (t_x s_y), so disc = k (k - 4) shares the sign of sigma.
    const double sigma = (s.x + s.y - 1.0) * (t.x + t.y - 1.0) - 4.0 * s.y * t.x;
    const double k = (s.x + s.y - 1.0) * (t.x + t.y - 1.0) / (t.x * s.y);
    const double disc = k * sigma / (t.x * s.y);
    const double eps = 1e-9 * std::max({(2.0 - k) * (2.0 - k), 1.0});
    if (std::abs(disc) <= eps) return {ConicType::Parabola, disc};
    return {disc < 0.0 ? ConicType::Ellipse : ConicType::Hyperbola, disc};
}

Line conic_type_separating_line(Point fixed) {
    require_in_simplex(fixed);
    // (s_x+s_y-1)(t_x+t_y-1) - 4 s_y t_x = 0, linear in t.
    const double w = fixed.x + fixed.y - 1.0;
    return Line::from_coeffs(w - 4.0 * fixed.y, w, -w);
}

// ---------------------------------------------------------------------------
// Arcs of a conic inside a convex cell

namespace {

double cell_scale(std::span<const Point> cell) {
    double lo_x = cell[0].x, hi_x = cell[0].x, lo_y = cell[0].y, hi_y = cell[0].y;
    for (const Point& p : cell) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    }
    return std::max(std::hypot(hi_x - lo_x, hi_y - lo_y), 1e-300);
}

bool inside_convex(std::span<const Point> cell, Point p, double tol) {
    for (std::size_t i = 0, n = cell.size(); i < n; ++i) {
        const Point a = cell[i], b = cell[(i + 1) % n];
        if (cross(b - a, p - a) < -tol * norm(b - a)) return false;
    }
    return true;
}

// Segment of a line inside a convex cell, if any.
std::optional<std::pair<Point, Point>> clip_line(const LineEq& line, std::span<const Point> cell) {
    const double n = std::hypot(line.a, line.b);
    const Point dir{-line.b / n, line.a / n};
    const Point base{-line.a * line.c / (n * n), -line.b * line.c / (n * n)};
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0, m = cell.size(); i < m; ++i) {
        const Point a = cell[i], b = cell[(i + 1) % m];
        const Point e = b - a;
        // inside: cross(e, p - a) >= 0 with p = base + s dir
        const double c0 = cross(e, base - a);
        const double c1 = cross(e, dir);
        if (std::abs(c1) <= 1e-15 * norm(e)) {
            if (c0 < -1e-12 * norm(e)) return std::nullopt;
            continue;
        }
        const double s = -c0 / c1;
        if (c1 > 0) lo = std::max(lo, s);
        else hi = std::min(hi, s);
    }
    if (!(hi > lo)) return std::nullopt;
    return std::make_pair(base + lo * dir, base + hi * dir);
}

// Real roots of a l^2 + b l + c = 0, double roots included once.
std::vector<double> quadratic_roots(double a, double b, double c) {
    const double mag = std::abs(b) + std::abs(c);
    if (std::abs(a) <= 1e-14 * mag) {
        if (b == 0.0) return {};
        return {-c / b};
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        if (disc < -1e-14 * (b * b + std::abs(4.0 * a * c))) return {};
        return {-b / (2.0 * a)};
    }
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q == 0.0) return {0.0};
    return {q / a, c / q};
}

}  // namespace

std::vector<std::vector<Point>> conic_arcs_in_cell(const ConicCoefficients& conic, std::span<const Point> cell, double tol) {
    std::vector<std::vector<Point>> arcs;
    if (cell.size() < 3) return arcs;
    const ConicCoefficients g = conic.normalized();
    const double scale = cell_scale(cell);
    const double min_len = 1e-12 * scale;

    if (classify_conic(g).tag == ConicType::DegenerateLinear) {
        std::vector<LineEq> lines;
        try {
            lines = degenerate_factor(g);
        } catch (const Error&) {
            return arcs;  // isolated real point
        }
        for (const LineEq& l : lines)
            if (auto seg = clip_line(l, cell); seg && distance(seg->first, seg->second) > min_len)
                arcs.push_back({seg->first, seg->second});
        return arcs;
    }

    std::vector<Point> hits;
    for (std::size_t i = 0, n = cell.size(); i < n; ++i) {
        const Point p = cell[i], d = cell[(i + 1) % n] - p;
        const double qa = g.A * d.x * d.x + g.B * d.x * d.y + g.C * d.y * d.y;
        const double qb = dot(g.gradient(p), d);
        const double qc = g(p);
        for (double lambda : quadratic_roots(qa, qb, qc)) {
            if (lambda < -1e-9 || lambda > 1.0 + 1e-9) continue;
            const Point x = p + std::clamp(lambda, 0.0, 1.0) * d;
            const bool dup = std::any_of(hits.begin(), hits.end(), [&](Point h) { return distance(h, x) <= 1e-11 * scale; });
            if (!dup) hits.push_back(x);
        }
    }
    if (hits.size() < 2) return arcs;

    // Rational parametrisation: the line through p0 at angle th meets the
    // conic again at point_at(th); th runs over [0, pi).
    const Point p0 = hits[0];
    const Point g0 = g.gradient(p0);
    auto wrap = [](double th) {
        th = std::fmod(th, std::numbers::pi);
        return th < 0.0 ? th + std::numbers::pi : th;
    };
    auto point_at = [&](double th) -> std::optional<Point> {
        const Point u{std::cos(th), std::sin(th)};
        const double q = g.A * u.x * u.x + g.B * u.x * u.y + g.C * u.y * u.y;
        const double l = dot(g0, u);
        if (std::abs(q) * 1e6 * scale <= std::abs(l)) return std::nullopt;  // escapes the cell
        double tau = -l / q;
        for (int it = 0; it < 2; ++it) {
            const Point x = p0 + tau * u;
            const double der = dot(g.gradient(x), u);
            if (der == 0.0) break;
            tau -= g(x) / der;
        }
        return p0 + tau * u;
    };

    std::vector<std::pair<double, Point>> params;
    params.emplace_back(wrap(std::atan2(g0.x, -g0.y)), p0);
    for (std::size_t i = 1; i < hits.size(); ++i) {
        const Point d = hits[i] - p0;
        params.emplace_back(wrap(std::atan2(d.y, d.x)), hits[i]);
    }
    std::sort(params.begin(), params.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    const double inside_tol = 1e-9 * scale;
    std::function<void(double, Point, double, Point, int, std::vector<Point>&)> refine =
        [&](double ta, Point pa, double tb, Point pb, int depth, std::vector<Point>& out) {
            const double tm = 0.5 * (ta + tb);
            const auto pm = point_at(tm);
            const bool split = pm && distance(pa, pb) > min_len && depth < 24 &&
                               (depth < 2 || point_segment_distance(*pm, pa, pb) > tol);
            if (split) {
                refine(ta, pa, tm, *pm, depth + 1, out);
                refine(tm, *pm, tb, pb, depth + 1, out);
            } else {
                out.push_back(pb);
            }
        };

    for (std::size_t i = 0, n = params.size(); i < n; ++i) {
        const double ta = params[i].first;
        const double tb = i + 1 < n ? params[i + 1].first : params[0].first + std::numbers::pi;
        if (tb - ta <= 1e-15) continue;
        const auto mid = point_at(0.5 * (ta + tb));
        if (!mid || !inside_convex(cell, *mid, inside_tol)) continue;
        std::vector<Point> arc{params[i].second};
        refine(ta, params[i].second, tb, params[(i + 1) % n].second, 0, arc);
        if (arc.size() >= 2 && distance(arc.front(), arc.back()) > min_len) arcs.push_back(std::move(arc));
    }
    return arcs;
}

// ---------------------------------------------------------------------------
// Tracing

double sampling_tolerance(const ConvexPolygon& domain) { return kSamplingFactor * domain.diameter(); }

std::vector<Point> BisectorCurve::polyline() const {
    std::vector<Point> out;
    for (const BisectorPiece& piece : pieces) {
        for (std::size_t i = 0; i < piece.polyline.size(); ++i) {
            if (i == 0 && !out.empty() && distance(out.back(), piece.polyline[0]) <= kEpsStitch) continue;
            out.push_back(piece.polyline[i]);
        }
    }
    return out;
}

std::vector<std::size_t> BisectorCurve::segment_pieces() const {
    std::vector<std::size_t> out;
    bool first_point = true;
    Point last{};
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const auto& pl = pieces[k].polyline;
        for (std::size_t i = 0; i < pl.size(); ++i) {
            if (i == 0 && !first_point && distance(last, pl[0]) <= kEpsStitch) continue;
            if (!first_point) out.push_back(k);
            first_point = false;
            last = pl[i];
        }
    }
    return out;
}

namespace {

double polyline_length(const std::vector<Point>& pl) {
    double len = 0.0;
    for (std::size_t i = 1; i < pl.size(); ++i) len += distance(pl[i - 1], pl[i]);
    return len;
}

bool same_ends(const std::vector<Point>& a, const std::vector<Point>& b, double tol) {
    return (distance(a.front(), b.front()) <= tol && distance(a.back(), b.back()) <= tol) ||
           (distance(a.front(), b.back()) <= tol && distance(a.back(), b.front()) <= tol);
}

}  // namespace

BisectorCurve trace_bisector(const ConvexPolygon& domain, Point s, Point t) {
    require_interior(domain, s);
    require_interior(domain, t);
    if (distance(s, t) <= kEpsGeom * std::max(1.0, domain.diameter())) fail(ErrorCode::PointsCoincide, "sites coincide");
    if (detect_degenerate_pair(domain, s, t)) fail(ErrorCode::DegeneratePair, "bisector contains a two-dimensional region");

    const double diam = domain.diameter();
    const double tol = 0.25 * sampling_tolerance(domain);
    const double near_boundary = interior_tolerance(domain);
    const double stitch = kEpsStitch * std::max(1.0, diam);

    std::vector<BisectorPiece> raw;
    for (Sector& sector : sector_decomposition(domain, s, t)) {
        const ConicCoefficients conic = bisector_conic(sector);
        // Equal labels on both sides with k == 1: the whole cell is equidistant.
        if (conic.max_abs() <= 1e-13 * (1.0 + std::abs(conic.k))) continue;
        for (auto& arc : conic_arcs_in_cell(conic, sector.region.vertices(), tol)) {
            const bool on_boundary = std::all_of(arc.begin(), arc.end(), [&](Point p) {
                return domain.boundary_distance(p) <= near_boundary;
            });
            if (on_boundary || polyline_length(arc) <= 1e-12 * diam) continue;
            auto dup = std::find_if(raw.begin(), raw.end(), [&](const BisectorPiece& piece) {
                return same_ends(piece.polyline, arc, stitch) &&
                       std::abs(polyline_length(piece.polyline) - polyline_length(arc)) <= stitch;
            });
            if (dup != raw.end()) {
                dup->on_spoke = true;
                continue;
            }
            raw.push_back({sector, conic, std::move(arc), false});
        }
    }
    if (raw.empty()) fail(ErrorCode::Internal, "no bisector piece found");

    // Chain pieces end to end starting from the endpoint nearest the boundary.
    std::vector<bool> used(raw.size(), false);
    std::size_t first = 0;
    bool flip_first = false;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < raw.size(); ++i) {
        for (bool at_back : {false, true}) {
            const Point p = at_back ? raw[i].polyline.back() : raw[i].polyline.front();
            const double d = domain.boundary_distance(p);
            if (d < best) {
                best = d;
                first = i;
                flip_first = at_back;
            }
        }
    }
    BisectorCurve curve;
    auto take = [&](std::size_t i, bool reverse) {
        used[i] = true;
        BisectorPiece piece = std::move(raw[i]);
        if (reverse) std::reverse(piece.polyline.begin(), piece.polyline.end());
        curve.pieces.push_back(std::move(piece));
    };
    take(first, flip_first);
    for (double reach : {stitch, 1e-4 * std::max(1.0, diam)}) {
        for (;;) {
            const Point end = curve.pieces.back().polyline.back();
            std::size_t next = raw.size();
            bool reverse = false;
            double gap = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < raw.size(); ++i) {
                if (used[i]) continue;
                const double df = distance(end, raw[i].polyline.front());
                const double db = distance(end, raw[i].polyline.back());
                if (std::min(df, db) < gap) {
                    gap = std::min(df, db);
                    next = i;
                    reverse = db < df;
                }
            }
            if (next == raw.size() || gap > reach) break;
            curve.max_gap = std::max(curve.max_gap, gap);
            take(next, reverse);
        }
    }
    if (std::find(used.begin(), used.end(), false) != used.end())
        fail(ErrorCode::Internal, "bisector pieces do not form a single curve");
    curve.start = curve.pieces.front().polyline.front();
    curve.end = curve.pieces.back().polyline.back();
    return curve;
}

}  // namespace hilbert
