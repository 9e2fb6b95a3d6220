#include "hilbert/star.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace hilbert {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Angular seam; offset from the axes so that it rarely meets a vertex.
constexpr double kSeam = -std::numbers::pi + 0.1234567;
constexpr double kAngleEps = 1e-12;
// Largest backward step in angle still treated as a radial edge.
constexpr double kAngleSlack = 1e-7;

double seam_angle(Point v) {
    double a = std::atan2(v.y, v.x);
    while (a < kSeam) a += kTwoPi;
    while (a >= kSeam + kTwoPi) a -= kTwoPi;
    return a;
}

// Polygon unrolled by angle with one extra vertex on each side of the seam.
struct Polar {
    Point center;
    std::vector<Point> pts;
    std::vector<double> ang;
    std::vector<std::size_t> tags;  // tags[j]: edge pts[j] -> pts[j+1]
    double scale = 0.0;
};

Polar unroll(const StarPolygon& s) {
    const std::size_t n = s.points.size();
    if (n < 3 || s.tags.size() != n) fail(ErrorCode::Internal, "star polygon needs at least three tagged vertices");
    std::vector<double> raw(n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        raw[i] = seam_angle(s.points[i] - s.center);
        scale = std::max(scale, distance(s.points[i], s.center));
    }
    // Start at the first vertex after the seam, skipping a radial partner
    // that would otherwise end up on the wrong side.
    std::size_t start = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (raw[i] < raw[start]) start = i;
    while (true) {
        const std::size_t prev = (start + n - 1) % n;
        if (std::abs(raw[prev] - raw[start]) > kAngleEps || prev == start) break;
        start = prev;
    }

    std::vector<Point> pts;
    std::vector<double> ang;
    std::vector<std::size_t> tags;
    double running = -1e300;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = (start + k) % n;
        double a = raw[i];
        if (k > 0 && a < running - kAngleSlack) a += kTwoPi;  // radial partner across the seam
        if (a < running - kAngleSlack) fail(ErrorCode::Internal, "polygon is not star-shaped around its center");
        a = std::max(a, running);
        if (!ang.empty() && a - ang.back() <= kAngleEps) a = ang.back();
        running = a;
        if (!pts.empty() && distance(pts.back(), s.points[i]) <= 1e-15 * scale) {
            tags.back() = s.tags[i];
            continue;
        }
        pts.push_back(s.points[i]);
        ang.push_back(a);
        tags.push_back(s.tags[i]);
    }
    if (ang.back() > ang.front() + kTwoPi + kAngleSlack) fail(ErrorCode::Internal, "polygon winds around its center more than once");
    // Collapse runs of three or more vertices on one ray to their ends.
    Polar out;
    out.center = s.center;
    out.scale = scale;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool same_prev = !out.ang.empty() && out.ang.back() == ang[i];
        const bool same_next = i + 1 < pts.size() && ang[i + 1] == ang[i];
        if (same_prev && same_next && out.ang.size() >= 2 && out.ang[out.ang.size() - 2] == ang[i]) {
            out.pts.back() = pts[i];
            out.tags.back() = tags[i];
            continue;
        }
        out.pts.push_back(pts[i]);
        out.ang.push_back(ang[i]);
        out.tags.push_back(tags[i]);
    }
    // Extend across the seam.
    const Point last = out.pts.back(), first = out.pts.front();
    const double last_ang = out.ang.back() - kTwoPi, first_ang = out.ang.front() + kTwoPi;
    const std::size_t last_tag = out.tags.back();
    out.pts.insert(out.pts.begin(), last);
    out.ang.insert(out.ang.begin(), std::min(last_ang, out.ang.front()));
    out.tags.insert(out.tags.begin(), last_tag);
    out.pts.push_back(first);
    out.ang.push_back(std::max(first_ang, out.ang.back()));
    out.tags.push_back(out.tags.front());
    return out;
}

// Point on segment a-b seen from c in direction theta.
Point ray_hit(Point c, Point a, Point b, double theta) {
    const Point d{std::cos(theta), std::sin(theta)};
    const double den = cross(d, b - a);
    double lambda = 0.5;
    if (std::abs(den) > 1e-300) lambda = -cross(d, a - c) / den;
    return lerp(a, b, std::clamp(lambda, 0.0, 1.0));
}

struct Span {
    Point start, end;
    std::size_t tag = 0;
    std::size_t index = 0;
};

class Walker {
public:
    explicit Walker(const Polar& p) : p_(p) {}

    Span span(double lo, double hi) {
        while (j_ + 2 < p_.ang.size() && p_.ang[j_ + 1] <= lo + kAngleEps) ++j_;
        const Point a = p_.pts[j_], b = p_.pts[j_ + 1];
        Span s;
        s.start = std::abs(p_.ang[j_] - lo) <= kAngleEps ? a : ray_hit(p_.center, a, b, lo);
        s.end = std::abs(p_.ang[j_ + 1] - hi) <= kAngleEps ? b : ray_hit(p_.center, a, b, hi);
        s.tag = p_.tags[j_];
        s.index = j_;
        return s;
    }

    /// Tag and radial extent of an edge lying along direction theta.
    std::optional<std::pair<std::size_t, std::pair<double, double>>> radial(double theta) const {
        for (std::size_t j = 0; j + 1 < p_.ang.size(); ++j) {
            for (double shift : {0.0, kTwoPi, -kTwoPi}) {
                if (std::abs(p_.ang[j] - theta - shift) <= kAngleEps && std::abs(p_.ang[j + 1] - theta - shift) <= kAngleEps) {
                    const double r0 = distance(p_.pts[j], p_.center), r1 = distance(p_.pts[j + 1], p_.center);
                    return std::make_pair(p_.tags[j], std::make_pair(std::min(r0, r1), std::max(r0, r1)));
                }
            }
        }
        return std::nullopt;
    }

private:
    const Polar& p_;
    std::size_t j_ = 0;
};

}  // namespace

StarPolygon star_intersection(const StarPolygon& p, const StarPolygon& q) {
    if (distance(p.center, q.center) > 0.0) fail(ErrorCode::Internal, "star polygons have different centers");
    const Polar a = unroll(p), b = unroll(q);
    const Point c = p.center;
    const double scale = std::max(a.scale, b.scale);
    const double tol = 1e-13 * scale;

    std::vector<double> crit{kSeam, kSeam + kTwoPi};
    for (const Polar* poly : {&a, &b})
        for (double t : poly->ang)
            if (t > kSeam && t < kSeam + kTwoPi) crit.push_back(t);
    std::sort(crit.begin(), crit.end());
    std::vector<double> uniq;
    for (double t : crit)
        if (uniq.empty() || t - uniq.back() > kAngleEps) uniq.push_back(t);
    if (uniq.back() < kSeam + kTwoPi) uniq.back() = kSeam + kTwoPi;

    Walker wa(a), wb(b);
    std::vector<Point> pts;
    std::vector<std::size_t> tags;
    auto connect = [&](Point from, Point to, double theta, std::size_t fallback) {
        if (distance(from, to) <= tol) return;
        const double lo = std::min(distance(from, c), distance(to, c)), hi = std::max(distance(from, c), distance(to, c));
        std::size_t tag = fallback;
        for (const Walker* w : {&wa, &wb}) {
            const auto r = w->radial(theta);
            if (r && r->second.first <= lo + tol && r->second.second >= hi - tol) {
                tag = r->first;
                break;
            }
        }
        pts.push_back(from);
        tags.push_back(tag);
    };

    std::optional<Point> prev_end;
    Point first_start;
    std::size_t first_tag = 0;
    for (std::size_t k = 0; k + 1 < uniq.size(); ++k) {
        const double lo = uniq[k], hi = uniq[k + 1];
        const Span sa = wa.span(lo, hi), sb = wb.span(lo, hi);
        const double ra0 = distance(sa.start, c), rb0 = distance(sb.start, c);
        const double ra1 = distance(sa.end, c), rb1 = distance(sb.end, c);
        const bool a_first = ra0 <= rb0 + tol;
        const bool a_last = ra1 <= rb1 + tol;
        const Span& w0 = a_first ? sa : sb;
        const Span& w1 = a_last ? sa : sb;
        if (prev_end) connect(*prev_end, w0.start, lo, w0.tag);
        if (k == 0) {
            first_start = w0.start;
            first_tag = w0.tag;
        }
        pts.push_back(w0.start);
        tags.push_back(w0.tag);
        if (a_first != a_last) {
            const Point d1 = w0.end - w0.start, d2 = w1.end - w1.start;
            const double den = cross(d1, d2);
            Point x = lerp(w0.start, w0.end, 0.5);
            if (std::abs(den) > 1e-300) {
                const double lambda = std::clamp(cross(w1.start - w0.start, d2) / den, 0.0, 1.0);
                x = lerp(w0.start, w0.end, lambda);
            }
            pts.push_back(x);
            tags.push_back(w1.tag);
        }
        prev_end = w1.end;
    }
    connect(*prev_end, first_start, kSeam, first_tag);

    // Drop repeated points, then merge consecutive edges from one source.
    StarPolygon out;
    out.center = c;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!out.points.empty() && distance(out.points.back(), pts[i]) <= tol) {
            out.tags.back() = tags[i];
            continue;
        }
        out.points.push_back(pts[i]);
        out.tags.push_back(tags[i]);
    }
    while (out.points.size() > 1 && distance(out.points.back(), out.points.front()) <= tol) {
        out.points.pop_back();
        out.tags.pop_back();
    }
    const std::size_t n = out.points.size();
    if (n > 3) {
        StarPolygon merged;
        merged.center = c;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t prev = (i + n - 1) % n;
            const Point before = merged.points.empty() ? out.points[prev] : merged.points.back();
            const Point here = out.points[i], after = out.points[(i + 1) % n];
            const double bend = std::abs(cross(here - before, after - here));
            const bool straight = bend <= 1e-12 * distance(here, before) * distance(after, here) + 1e-30;
            if (out.tags[prev] == out.tags[i] && straight) continue;
            merged.points.push_back(here);
            merged.tags.push_back(out.tags[i]);
        }
        if (merged.points.size() >= 3) out = std::move(merged);
    }
    return out;
}

}  // namespace hilbert
