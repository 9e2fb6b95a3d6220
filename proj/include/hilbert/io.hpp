#pragma once

// Scene files and diagram dumps (UTF-8 JSON), plus SVG rendering.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hilbert/voronoi.hpp"

namespace hilbert {

struct Scene {
    std::vector<Point> polygon;  // counter-clockwise
    std::vector<Site> sites;

    friend bool operator==(const Scene&, const Scene&) = default;
};

/// Throws Parse on malformed JSON or missing fields.
Scene parse_scene(std::string_view text);
std::string scene_to_json(const Scene& scene);
/// Validates the polygon and builds the diagram in id order.
VoronoiDiagram build_scene(const Scene& scene);

struct DumpEdge {
    std::string kind;  // "boundary", "bisector" or "tie"
    std::size_t boundary_edge = 0;
    std::array<std::string, 2> pair;
    std::optional<std::array<std::size_t, 4>> sector_edges;
    std::optional<std::array<double, 6>> conic;
    std::optional<double> k;

    friend bool operator==(const DumpEdge&, const DumpEdge&) = default;
};

struct DumpCell {
    std::string site;
    std::vector<Point> polyline;  // closed; the last vertex connects to the first
    std::vector<DumpEdge> edges;  // edges[i] joins polyline[i] and polyline[i+1]

    friend bool operator==(const DumpCell&, const DumpCell&) = default;
};

struct DumpDegeneracy {
    std::array<std::string, 2> pair;
    std::array<double, 3> vanishing_point{};  // homogeneous
    std::array<std::size_t, 2> edges{};
    std::vector<std::vector<Point>> regions;
    std::string tie_assignment;

    friend bool operator==(const DumpDegeneracy&, const DumpDegeneracy&) = default;
};

struct DiagramDump {
    Scene scene;
    std::vector<DumpCell> cells;
    std::vector<DumpDegeneracy> degeneracies;

    friend bool operator==(const DiagramDump&, const DiagramDump&) = default;
};

inline constexpr int kDumpVersion = 1;

DiagramDump make_dump(const VoronoiDiagram& diagram);
std::string dump_to_json(const DiagramDump& dump);
/// Throws Parse.
DiagramDump parse_dump(std::string_view text);

/// Deterministic SVG with a 1000-unit view box fitted to the domain.
std::string render_svg(const VoronoiDiagram& diagram);

}  // namespace hilbert
