#pragma once

// JSON views shared by the serializer, the protocol session and the C API.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hilbert/io.hpp"
#include "json.hpp"

namespace hilbert::json {

using Json = nlohmann::ordered_json;

Json point(Point p);
Point point_from(const Json& j);
Json points(std::span<const Point> pts);
std::vector<Point> points_from(const Json& j);

Json scene(const Scene& s);
Scene scene_from(const Json& j);
Json dump(const DiagramDump& d);
DiagramDump dump_from(const Json& j);

/// An Error carrying a JSON payload for the response's "details" field.
struct DetailedError : Error {
    DetailedError(ErrorCode code, const std::string& message, Json d) : Error(code, message), details(std::move(d)) {}
    Json details;
};

/// Throws Parse with the parser's message.
Json parse(std::string_view text);

Json ball(const std::string& site, const HilbertBall& ball, std::optional<double> max_residual);
Json bisector(const std::string& a, const std::string& b, const ConvexPolygon& domain, Point s, Point t,
              const BisectorCurve& curve);
Json degeneracy(const DegeneracyReport& report);
Json zregion(const std::string& a, const std::string& b, const ZRegion& z);
Json events(const std::string& moving, const std::string& other, const std::vector<CrossingEvent>& events);
Json sectors(const std::string& a, const std::string& b, const std::vector<Sector>& sectors);
Json error(const Error& e);

/// 2 for input errors, 3 for geometric degeneracy, 1 otherwise.
int exit_code(ErrorCode code);

}  // namespace hilbert::json
