#include "hilbert/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "json_util.hpp"

namespace hilbert {

namespace {

using json::Json;

const Json& member(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) fail(ErrorCode::Parse, std::string("missing field '") + name + "'");
    return j.at(name);
}

std::string text(const Json& j, const char* name) {
    const Json& v = member(j, name);
    if (!v.is_string()) fail(ErrorCode::Parse, std::string("field '") + name + "' must be a string");
    return v.get<std::string>();
}

double number(const Json& j, const char* name) {
    const Json& v = member(j, name);
    if (!v.is_number()) fail(ErrorCode::Parse, std::string("field '") + name + "' must be a number");
    return v.get<double>();
}

bool is_mutation(const std::string& kind) {
    return kind == "insert_site" || kind == "move_site" || kind == "remove_site";
}

Json distance_result(const VoronoiDiagram& d, const Json& p) {
    if (p.contains("point")) {
        const Point q = json::point_from(p.at("point"));
        require_interior(d.domain(), q);
        Json distances = Json::object();
        for (const Site& s : d.sites()) distances[s.id] = hilbert_distance(d.domain(), s.pos, q);
        Json out = {{"point", json::point(q)}, {"distances", std::move(distances)}};
        out["nearest"] = d.sites().empty() ? Json(nullptr) : Json(nearest_site(d, q));
        return out;
    }
    const std::string from = text(p, "from"), to = text(p, "to");
    return {{"from", from}, {"to", to}, {"distance", hilbert_distance(d.domain(), d.site(from).pos, d.site(to).pos)}};
}

Json ball_result(const VoronoiDiagram& d, const Json& p) {
    const double r = number(p, "r");
    std::string label;
    Point center;
    if (p.contains("center")) {
        center = json::point_from(p.at("center"));
    } else {
        label = text(p, "site");
        center = d.site(label).pos;
    }
    const HilbertBall b = hilbert_ball(d.domain(), center, r);
    double residual = 0.0;
    for (const Point& v : b.boundary.vertices())
        if (is_interior(d.domain(), v)) residual = std::max(residual, std::abs(hilbert_distance(d.domain(), center, v) - r));
    return json::ball(label, b, residual);
}

Json pair_query(const VoronoiDiagram& d, const std::string& kind, const Json& p) {
    const std::string a = text(p, "a"), b = text(p, "b");
    const Point s = d.site(a).pos, t = d.site(b).pos;
    if (kind == "query_sectors") return json::sectors(a, b, sector_decomposition(d.domain(), s, t));
    if (auto report = detect_degenerate_pair(d.domain(), s, t)) {
        report->site_a = std::min(a, b);
        report->site_b = std::max(a, b);
        report->tie_owner = report->site_a;
        throw json::DetailedError(ErrorCode::DegeneratePair, "sites " + a + " and " + b + " have a two-dimensional bisector",
                                  json::degeneracy(*report));
    }
    if (kind == "query_zregion") return json::zregion(a, b, z_region(d.domain(), s, t));
    return json::bisector(a, b, d.domain(), s, t, trace_bisector(d.domain(), s, t));
}

Json crossing_summary(const VoronoiDiagram& before, const std::string& id, Point to) {
    Json out = Json::array();
    const Point from = before.site(id).pos;
    if (distance(from, to) == 0.0) return out;
    const Segment motion(from, to);
    for (const Site& other : before.sites()) {
        if (other.id == id) continue;
        const auto list = crossing_events(before.domain(), motion, other.pos);
        if (!list.empty()) out.push_back(json::events(id, other.id, list));
    }
    return out;
}

}  // namespace

ProtocolSession::ProtocolSession(std::size_t capacity) : capacity_(std::max<std::size_t>(capacity, 1)) {}

std::uint64_t ProtocolSession::latest() const {
    std::lock_guard lock(mutex_);
    return snapshots_.empty() ? 0 : snapshots_.rbegin()->first;
}

std::shared_ptr<const VoronoiDiagram> ProtocolSession::snapshot(std::uint64_t id) const {
    std::lock_guard lock(mutex_);
    const auto it = snapshots_.find(id);
    if (it == snapshots_.end()) fail(ErrorCode::UnknownSnapshot, "unknown snapshot " + std::to_string(id));
    return it->second.diagram;
}

std::uint64_t ProtocolSession::commit(std::shared_ptr<const VoronoiDiagram> diagram) {
    const std::uint64_t id = next_++;
    snapshots_[id] = Entry{std::move(diagram), {}};
    while (snapshots_.size() > capacity_) snapshots_.erase(snapshots_.begin());
    return id;
}

std::string ProtocolSession::handle(std::string_view request) {
    Json response = {{"version", kProtocolVersion}, {"request", nullptr}, {"snapshot", nullptr}};
    try {
        const Json req = json::parse(request);
        if (!req.is_object()) fail(ErrorCode::Parse, "request must be an object");
        const std::string kind = text(req, "request");
        response["request"] = kind;
        const Json& version = member(req, "version");
        if (!version.is_number_integer() || version.get<int>() != kProtocolVersion)
            fail(ErrorCode::Parse, "unsupported protocol version");
        const Json payload = req.contains("payload") ? req.at("payload") : Json::object();
        if (!payload.is_object()) fail(ErrorCode::Parse, "payload must be an object");

        static const char* const kKinds[] = {"load_scene",     "insert_site",   "move_site",     "remove_site",
                                             "query_distance", "query_ball",    "query_bisector", "query_zregion",
                                             "query_sectors",  "full_diagram"};
        if (std::find(std::begin(kKinds), std::end(kKinds), kind) == std::end(kKinds))
            fail(ErrorCode::Parse, "unknown request '" + kind + "'");

        if (kind == "load_scene") {
            const Scene scene = json::scene_from(member(payload, "scene"));
            const std::string key = json::scene(scene).dump();
            {
                std::lock_guard lock(mutex_);
                const auto it = loads_.find(key);
                if (it != loads_.end() && snapshots_.count(it->second)) {
                    response["snapshot"] = it->second;
                    response["ok"] = true;
                    response["result"] = {{"diagram", json::dump(make_dump(*snapshots_.at(it->second).diagram))}};
                    return response.dump();
                }
            }
            auto diagram = std::make_shared<const VoronoiDiagram>(build_scene(scene));
            std::lock_guard lock(mutex_);
            const std::uint64_t id = commit(diagram);
            loads_[key] = id;
            response["snapshot"] = id;
            response["ok"] = true;
            response["result"] = {{"diagram", json::dump(make_dump(*diagram))}};
            return response.dump();
        }

        std::uint64_t base = 0;
        if (req.contains("snapshot") && !req.at("snapshot").is_null()) {
            if (!req.at("snapshot").is_number_unsigned()) fail(ErrorCode::Parse, "snapshot must be a non-negative integer");
            base = req.at("snapshot").get<std::uint64_t>();
        } else {
            base = latest();
            if (base == 0) fail(ErrorCode::UnknownSnapshot, "no scene loaded");
        }
        const auto diagram = snapshot(base);
        response["snapshot"] = base;

        if (is_mutation(kind)) {
            const std::string key = kind + payload.dump();
            {
                std::lock_guard lock(mutex_);
                const auto& children = snapshots_.at(base).children;
                const auto it = children.find(key);
                if (it != children.end() && snapshots_.count(it->second)) {
                    const auto& child = *snapshots_.at(it->second).diagram;
                    response["snapshot"] = it->second;
                    response["ok"] = true;
                    Json result = {{"base", base}, {"diagram", json::dump(make_dump(child))}};
                    if (kind == "move_site")
                        result["events"] = crossing_summary(*diagram, text(payload, "id"), json::point_from(member(payload, "pos")));
                    response["result"] = std::move(result);
                    return response.dump();
                }
            }
            std::shared_ptr<const VoronoiDiagram> next;
            Json events;
            if (kind == "insert_site") {
                const Json& site = member(payload, "site");
                next = std::make_shared<const VoronoiDiagram>(diagram->insert_site({text(site, "id"), json::point_from(member(site, "pos"))}));
            } else if (kind == "move_site") {
                const std::string id = text(payload, "id");
                const Point pos = json::point_from(member(payload, "pos"));
                next = std::make_shared<const VoronoiDiagram>(diagram->move_site(id, pos));
                events = crossing_summary(*diagram, id, pos);
            } else {
                next = std::make_shared<const VoronoiDiagram>(diagram->remove_site(text(payload, "id")));
            }
            std::lock_guard lock(mutex_);
            const std::uint64_t id = commit(next);
            if (snapshots_.count(base)) snapshots_.at(base).children[key] = id;
            response["snapshot"] = id;
            response["ok"] = true;
            Json result = {{"base", base}, {"diagram", json::dump(make_dump(*next))}};
            if (kind == "move_site") result["events"] = std::move(events);
            response["result"] = std::move(result);
            return response.dump();
        }

        Json result;
        if (kind == "query_distance") {
            result = distance_result(*diagram, payload);
        } else if (kind == "query_ball") {
            result = ball_result(*diagram, payload);
        } else if (kind == "query_bisector" || kind == "query_zregion" || kind == "query_sectors") {
            result = pair_query(*diagram, kind, payload);
        } else {
            result = {{"diagram", json::dump(make_dump(*diagram))}};
        }
        response["ok"] = true;
        response["result"] = std::move(result);
    } catch (const json::DetailedError& e) {
        response["ok"] = false;
        response["error"] = json::error(e);
        response["error"]["details"] = e.details;
    } catch (const Error& e) {
        response["ok"] = false;
        response["error"] = json::error(e);
    } catch (const std::exception& e) {
        response["ok"] = false;
        response["error"] = json::error(Error(ErrorCode::Internal, e.what()));
    }
    return response.dump();
}

}  // namespace hilbert
