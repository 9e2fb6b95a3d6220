#include <algorithm>
#include <cmath>

#include "json_util.hpp"

namespace hilbert {

namespace json {

Json point(Point p) { return Json::array({p.x, p.y}); }

Point point_from(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(ErrorCode::Parse, "expected a point [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json points(std::span<const Point> pts) {
    Json out = Json::array();
    for (const Point& p : pts) out.push_back(point(p));
    return out;
}

std::vector<Point> points_from(const Json& j) {
    if (!j.is_array()) fail(ErrorCode::Parse, "expected a list of points");
    std::vector<Point> out;
    for (const Json& p : j) out.push_back(point_from(p));
    return out;
}

namespace {

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) fail(ErrorCode::Parse, std::string("missing field '") + name + "'");
    return j.at(name);
}

std::string string_field(const Json& j, const char* name) {
    const Json& v = field(j, name);
    if (!v.is_string()) fail(ErrorCode::Parse, std::string("field '") + name + "' must be a string");
    return v.get<std::string>();
}

std::size_t index_from(const Json& j) {
    if (!j.is_number_unsigned()) fail(ErrorCode::Parse, "expected a non-negative integer");
    return j.get<std::size_t>();
}

template <std::size_t N>
std::array<double, N> numbers_from(const Json& j) {
    if (!j.is_array() || j.size() != N) fail(ErrorCode::Parse, "expected a list of " + std::to_string(N) + " numbers");
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        if (!j[i].is_number()) fail(ErrorCode::Parse, "expected a number");
        out[i] = j[i].get<double>();
    }
    return out;
}

std::array<std::string, 2> pair_from(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        fail(ErrorCode::Parse, "expected a pair of site ids");
    return {j[0].get<std::string>(), j[1].get<std::string>()};
}

Json label(const SectorLabel& l) { return Json::array({l.a, l.b, l.c, l.d}); }

Json conic_coefficients(const ConicCoefficients& c) { return Json::array({c.A, c.B, c.C, c.D, c.E, c.F}); }

}  // namespace

Json parse(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
    }
}

Json scene(const Scene& s) {
    Json sites = Json::array();
    for (const Site& site : s.sites) sites.push_back({{"id", site.id}, {"pos", point(site.pos)}});
    return {{"polygon", points(s.polygon)}, {"sites", sites}};
}

Scene scene_from(const Json& j) {
    Scene s;
    s.polygon = points_from(field(j, "polygon"));
    if (j.contains("sites")) {
        const Json& sites = j.at("sites");
        if (!sites.is_array()) fail(ErrorCode::Parse, "field 'sites' must be a list");
        for (const Json& site : sites) s.sites.push_back({string_field(site, "id"), point_from(field(site, "pos"))});
    }
    return s;
}

Json dump(const DiagramDump& d) {
    Json cells = Json::array();
    for (const DumpCell& c : d.cells) {
        Json edges = Json::array();
        for (const DumpEdge& e : c.edges) {
            Json edge = {{"kind", e.kind}};
            if (e.kind == "boundary") {
                edge["boundary_edge"] = e.boundary_edge;
            } else {
                edge["pair"] = Json::array({e.pair[0], e.pair[1]});
            }
            if (e.sector_edges) edge["sector_edges"] = Json::array({(*e.sector_edges)[0], (*e.sector_edges)[1], (*e.sector_edges)[2], (*e.sector_edges)[3]});
            if (e.conic) edge["conic"] = Json(*e.conic);
            if (e.k) edge["k"] = *e.k;
            edges.push_back(std::move(edge));
        }
        cells.push_back({{"site", c.site}, {"polyline", points(c.polyline)}, {"edges", std::move(edges)}});
    }
    Json degeneracies = Json::array();
    for (const DumpDegeneracy& g : d.degeneracies) {
        Json regions = Json::array();
        for (const auto& r : g.regions) regions.push_back(points(r));
        degeneracies.push_back({{"pair", Json::array({g.pair[0], g.pair[1]})},
                                {"vanishing_point", Json(g.vanishing_point)},
                                {"edges", Json::array({g.edges[0], g.edges[1]})},
                                {"regions", std::move(regions)},
                                {"tie_assignment", g.tie_assignment}});
    }
    return {{"format", "hilbert-voronoi-dump"},
            {"version", kDumpVersion},
            {"scene", scene(d.scene)},
            {"cells", std::move(cells)},
            {"degeneracies", std::move(degeneracies)}};
}

DiagramDump dump_from(const Json& j) {
    if (string_field(j, "format") != "hilbert-voronoi-dump") fail(ErrorCode::Parse, "not a diagram dump");
    const Json& version = field(j, "version");
    if (!version.is_number_integer() || version.get<int>() != kDumpVersion) fail(ErrorCode::Parse, "unsupported dump version");
    DiagramDump d;
    d.scene = scene_from(field(j, "scene"));
    for (const Json& c : field(j, "cells")) {
        DumpCell cell;
        cell.site = string_field(c, "site");
        cell.polyline = points_from(field(c, "polyline"));
        for (const Json& e : field(c, "edges")) {
            DumpEdge edge;
            edge.kind = string_field(e, "kind");
            if (edge.kind == "boundary") {
                edge.boundary_edge = index_from(field(e, "boundary_edge"));
            } else if (edge.kind == "bisector" || edge.kind == "tie") {
                edge.pair = pair_from(field(e, "pair"));
            } else {
                fail(ErrorCode::Parse, "unknown edge kind '" + edge.kind + "'");
            }
            if (e.contains("sector_edges")) {
                const Json& s = e.at("sector_edges");
                if (!s.is_array() || s.size() != 4) fail(ErrorCode::Parse, "sector_edges needs four entries");
                edge.sector_edges = std::array<std::size_t, 4>{index_from(s[0]), index_from(s[1]), index_from(s[2]), index_from(s[3])};
            }
            if (e.contains("conic")) edge.conic = numbers_from<6>(e.at("conic"));
            if (e.contains("k")) edge.k = numbers_from<1>(Json::array({e.at("k")}))[0];
            cell.edges.push_back(std::move(edge));
        }
        if (cell.edges.size() != cell.polyline.size()) fail(ErrorCode::Parse, "cell needs one edge per polyline vertex");
        d.cells.push_back(std::move(cell));
    }
    for (const Json& g : field(j, "degeneracies")) {
        DumpDegeneracy deg;
        deg.pair = pair_from(field(g, "pair"));
        deg.vanishing_point = numbers_from<3>(field(g, "vanishing_point"));
        const Json& edges = field(g, "edges");
        if (!edges.is_array() || edges.size() != 2) fail(ErrorCode::Parse, "edges needs two entries");
        deg.edges = {index_from(edges[0]), index_from(edges[1])};
        for (const Json& r : field(g, "regions")) deg.regions.push_back(points_from(r));
        deg.tie_assignment = string_field(g, "tie_assignment");
        d.degeneracies.push_back(std::move(deg));
    }
    return d;
}

Json ball(const std::string& site, const HilbertBall& b, std::optional<double> max_residual) {
    Json out = {{"site", site}, {"center", point(b.center)}, {"radius", b.radius}, {"vertices", points(b.boundary.vertices())}};
    if (max_residual) out["max_residual"] = *max_residual;
    return out;
}

Json bisector(const std::string& a, const std::string& b, const ConvexPolygon& domain, Point s, Point t,
              const BisectorCurve& curve) {
    Json pieces = Json::array();
    double worst = 0.0;
    for (const BisectorPiece& piece : curve.pieces) {
        double residual = 0.0;
        for (const Point& p : piece.polyline) {
            if (!is_interior(domain, p)) continue;
            residual = std::max(residual, std::abs(hilbert_distance(domain, s, p) - hilbert_distance(domain, t, p)));
        }
        worst = std::max(worst, residual);
        pieces.push_back({{"sector_edges", label(piece.sector.edges)},
                          {"conic", conic_coefficients(piece.conic)},
                          {"k", piece.conic.k},
                          {"type", to_string(classify_conic(piece.conic).tag)},
                          {"on_spoke", piece.on_spoke},
                          {"polyline", points(piece.polyline)},
                          {"max_residual", residual}});
    }
    return {{"pair", Json::array({a, b})},
            {"start", point(curve.start)},
            {"end", point(curve.end)},
            {"pieces", std::move(pieces)},
            {"max_residual", worst}};
}

Json degeneracy(const DegeneracyReport& r) {
    Json regions = Json::array();
    for (const ConvexPolygon& p : r.regions) regions.push_back(points(p.vertices()));
    return {{"pair", Json::array({r.site_a, r.site_b})},
            {"vanishing_point", Json::array({r.vanishing_point.x, r.vanishing_point.y, r.vanishing_point.w})},
            {"edges", Json::array({r.edge_i, r.edge_j})},
            {"regions", std::move(regions)},
            {"tie_assignment", r.tie_owner}};
}

Json zregion(const std::string& a, const std::string& b, const ZRegion& z) {
    return {{"pair", Json::array({a, b})}, {"quad", points(z.quad.vertices())}};
}

Json events(const std::string& moving, const std::string& other, const std::vector<CrossingEvent>& list) {
    Json out = Json::array();
    for (const CrossingEvent& e : list)
        out.push_back({{"u", e.u},
                       {"vanishing_point", Json::array({e.vanishing_point.x, e.vanishing_point.y, e.vanishing_point.w})},
                       {"edges", Json::array({e.edge_i, e.edge_j})}});
    return {{"moving", moving}, {"other", other}, {"events", std::move(out)}};
}

Json sectors(const std::string& a, const std::string& b, const std::vector<Sector>& list) {
    Json out = Json::array();
    for (const Sector& s : list) out.push_back({{"edges", label(s.edges)}, {"region", points(s.region.vertices())}});
    return {{"pair", Json::array({a, b})}, {"sectors", std::move(out)}};
}

int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegeneratePair:
            return 3;
        case ErrorCode::Internal:
            return 1;
        default:
            return 2;
    }
}

Json error(const Error& e) {
    return {{"code", to_string(e.code())}, {"exit_code", exit_code(e.code())}, {"message", e.what()}};
}

}  // namespace json

Scene parse_scene(std::string_view text) { return json::scene_from(json::parse(text)); }

std::string scene_to_json(const Scene& scene) { return json::scene(scene).dump(2); }

VoronoiDiagram build_scene(const Scene& scene) {
    return build_diagram(ConvexPolygon(scene.polygon), scene.sites);
}

DiagramDump make_dump(const VoronoiDiagram& diagram) {
    DiagramDump d;
    d.scene.polygon = diagram.domain().vertices();
    d.scene.sites = diagram.sites();
    for (const VoronoiCell& cell : diagram.cells()) {
        DumpCell out;
        out.site = cell.site;
        out.polyline = cell.region.points;
        for (std::size_t tag : cell.region.tags) {
            const EdgeSource& src = diagram.sources()[tag];
            DumpEdge edge;
            if (src.kind == EdgeSource::Kind::Boundary) {
                edge.kind = "boundary";
                edge.boundary_edge = src.boundary_edge;
            } else {
                const PairSplit& pair = diagram.pairs()[src.pair];
                edge.pair = {pair.site_a, pair.site_b};
                const int piece = pair.segment_piece[src.segment];
                if (piece < 0) {
                    edge.kind = "tie";
                } else {
                    const SplitPiece& sp = pair.pieces[static_cast<std::size_t>(piece)];
                    edge.kind = "bisector";
                    edge.sector_edges = std::array<std::size_t, 4>{sp.edges.a, sp.edges.b, sp.edges.c, sp.edges.d};
                    const ConicCoefficients& c = sp.conic;
                    edge.conic = std::array<double, 6>{c.A, c.B, c.C, c.D, c.E, c.F};
                    edge.k = c.k;
                }
            }
            out.edges.push_back(std::move(edge));
        }
        d.cells.push_back(std::move(out));
    }
    for (const DegeneracyReport& r : diagram.degeneracies()) {
        DumpDegeneracy g;
        g.pair = {r.site_a, r.site_b};
        g.vanishing_point = {r.vanishing_point.x, r.vanishing_point.y, r.vanishing_point.w};
        g.edges = {r.edge_i, r.edge_j};
        for (const ConvexPolygon& p : r.regions) g.regions.push_back(p.vertices());
        g.tie_assignment = r.tie_owner;
        d.degeneracies.push_back(std::move(g));
    }
    return d;
}

std::string dump_to_json(const DiagramDump& dump) { return json::dump(dump).dump(2); }

DiagramDump parse_dump(std::string_view text) { return json::dump_from(json::parse(text)); }

}  // namespace hilbert
