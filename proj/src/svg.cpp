#include <algorithm>
#include <cstdio>
#include <string>

#include "hilbert/io.hpp"

namespace hilbert {

namespace {

constexpr double kView = 1000.0;
constexpr double kMargin = 20.0;

const char* const kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                                "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};

struct Frame {
    double lo_x = 0, hi_y = 0, scale = 1;

    explicit Frame(const ConvexPolygon& domain) {
        double hi_x = -1e300, lo_y = 1e300;
        lo_x = 1e300;
        hi_y = -1e300;
        for (const Point& p : domain.vertices()) {
            lo_x = std::min(lo_x, p.x);
            hi_x = std::max(hi_x, p.x);
            lo_y = std::min(lo_y, p.y);
            hi_y = std::max(hi_y, p.y);
        }
        scale = (kView - 2 * kMargin) / std::max(hi_x - lo_x, hi_y - lo_y);
    }

    Point map(Point p) const { return {kMargin + (p.x - lo_x) * scale, kMargin + (hi_y - p.y) * scale}; }
};

std::string fmt(const char* pattern, double a, double b) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

std::string path(const Frame& f, const std::vector<Point>& pts) {
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point q = f.map(pts[i]);
        d += fmt(i == 0 ? "M%.3f %.3f" : " L%.3f %.3f", q.x, q.y);
    }
    return d + " Z";
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const VoronoiDiagram& diagram) {
    const Frame f(diagram.domain());
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n";
    std::size_t k = 0;
    for (const VoronoiCell& cell : diagram.cells()) {
        out += "  <path class=\"cell\" data-site=\"" + escape(cell.site) + "\" fill=\"" +
               kPalette[k++ % std::size(kPalette)] + "\" stroke=\"#333333\" stroke-width=\"1\" d=\"" +
               path(f, cell.region.points) + "\"/>\n";
    }
    for (const DegeneracyReport& r : diagram.degeneracies())
        for (const ConvexPolygon& region : r.regions)
            out += "  <path class=\"tie\" fill=\"none\" stroke=\"#d62728\" stroke-dasharray=\"6 4\" d=\"" +
                   path(f, region.vertices()) + "\"/>\n";
    out += "  <path class=\"domain\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\" d=\"" +
           path(f, diagram.domain().vertices()) + "\"/>\n";
    for (const Site& s : diagram.sites()) {
        const Point q = f.map(s.pos);
        out += "  <circle class=\"site\" data-site=\"" + escape(s.id) + "\"" + fmt(" cx=\"%.3f\" cy=\"%.3f\"", q.x, q.y) +
               " r=\"4\" fill=\"#000000\"/>\n";
    }
    return out + "</svg>\n";
}

}  // namespace hilbert
