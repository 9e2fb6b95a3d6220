// Command-line front end over the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hilbert.h"

namespace {

constexpr double kBallTolerance = 1e-7;
constexpr double kBisectorTolerance = 1e-6;

struct Failure {
    int code;
};

using Scene = std::unique_ptr<hv_scene, decltype(&hv_scene_free)>;
using Diagram = std::unique_ptr<hv_diagram, decltype(&hv_diagram_free)>;
using Text = std::unique_ptr<hv_string, decltype(&hv_string_free)>;

[[noreturn]] void fail_with(hv_status status) {
    std::cerr << "error: " << hv_last_error() << "\n";
    throw Failure{hv_status_exit_code(status)};
}

void check(hv_status status) {
    if (status != HV_OK) fail_with(status);
}

Scene load_scene(const std::string& path) {
    hv_scene* raw = nullptr;
    check(hv_scene_read_file(path.c_str(), &raw));
    return Scene(raw, hv_scene_free);
}

Text adopt(hv_string* s) { return Text(s, hv_string_free); }

void write_file(const std::string& path, const hv_string* text) {
    std::ofstream out(path, std::ios::binary);
    out.write(hv_string_data(text), static_cast<std::streamsize>(hv_string_size(text)));
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        throw Failure{2};
    }
}

// Writes to --out when given, stdout otherwise.
void emit(const std::string& out_path, const hv_string* text) {
    if (!out_path.empty()) {
        write_file(out_path, text);
        return;
    }
    std::cout.write(hv_string_data(text), static_cast<std::streamsize>(hv_string_size(text)));
    std::cout << "\n";
}

// Extracts a top-level numeric field from the library's JSON output.
double number_field(const hv_string* text, const std::string& name) {
    const std::string data = hv_string_data(text);
    const std::string key = "\"" + name + "\": ";
    const std::size_t at = data.rfind(key);
    if (at == std::string::npos) return 0.0;
    return std::stod(data.substr(at + key.size()));
}

std::string format_distance(double d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", d);
    return buf;
}

int run_protocol() {
    hv_session* raw = nullptr;
    check(hv_session_new(0, &raw));
    std::unique_ptr<hv_session, decltype(&hv_session_free)> session(raw, hv_session_free);
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        hv_string* reply = nullptr;
        check(hv_session_handle(session.get(), line.data(), line.size(), &reply));
        std::cout << hv_string_data(adopt(reply).get()) << std::endl;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Voronoi diagrams and queries in the Hilbert metric on convex polygons"};
    app.require_subcommand(1);

    std::string scene_path, out_path, svg_path;
    bool verify = false;
    std::size_t grid = 0;
    std::string a, b, site;
    double radius = 0.0;
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    auto add_scene = [&](CLI::App* cmd) { cmd->add_option("--scene", scene_path, "Scene JSON file")->required(); };
    auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out_path, "Write JSON here instead of stdout"); };

    CLI::App* distance = app.add_subcommand("distance", "Hilbert distance between two sites");
    add_scene(distance);
    distance->add_option("from", a)->required();
    distance->add_option("to", b)->required();

    CLI::App* ball = app.add_subcommand("ball", "Hilbert ball around a site");
    add_scene(ball);
    add_out(ball);
    ball->add_option("site", site)->required();
    ball->add_option("r", radius, "Radius, positive")->required();
    ball->add_flag("--verify", verify, "Fail if a vertex is off the ball by more than 1e-7");

    CLI::App* bisector = app.add_subcommand("bisector", "Bisector conics and sector labels of two sites");
    add_scene(bisector);
    add_out(bisector);
    bisector->add_option("a", a)->required();
    bisector->add_option("b", b)->required();
    bisector->add_flag("--verify", verify, "Fail if a sample is off the bisector by more than 1e-6");

    CLI::App* voronoi = app.add_subcommand("voronoi", "Build the diagram and export it");
    add_scene(voronoi);
    add_out(voronoi);
    voronoi->add_option("--svg", svg_path, "Write an SVG rendering");
    voronoi->add_option("--grid-check", grid, "Compare against brute force on an N-by-N grid")->check(CLI::PositiveNumber);

    CLI::App* zregion = app.add_subcommand("zregion", "Region every ball through both sites contains");
    add_scene(zregion);
    add_out(zregion);
    zregion->add_option("a", a)->required();
    zregion->add_option("b", b)->required();

    CLI::App* events = app.add_subcommand("events", "Degeneracy crossings while a site moves along a segment");
    add_scene(events);
    add_out(events);
    events->add_option("moving", a)->required();
    events->add_option("x0", x0)->required();
    events->add_option("y0", y0)->required();
    events->add_option("x1", x1)->required();
    events->add_option("y1", y1)->required();
    events->add_option("other", b)->required();

    CLI::App* protocol = app.add_subcommand("protocol", "Answer JSON protocol requests, one per line on stdin");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (protocol->parsed()) return run_protocol();
        const Scene scene = load_scene(scene_path);

        if (distance->parsed()) {
            double d = 0.0;
            check(hv_distance(scene.get(), a.c_str(), b.c_str(), &d));
            std::cout << format_distance(d) << "\n";
        } else if (ball->parsed()) {
            hv_string* raw = nullptr;
            check(hv_ball(scene.get(), site.c_str(), radius, &raw));
            const Text text = adopt(raw);
            emit(out_path, text.get());
            const double residual = number_field(text.get(), "max_residual");
            if (verify) {
                std::cerr << "max residual: " << residual << "\n";
                if (!(residual <= kBallTolerance)) {
                    std::cerr << "error: ball verification failed\n";
                    return 1;
                }
            }
        } else if (bisector->parsed()) {
            hv_string* raw = nullptr;
            const hv_status status = hv_bisector(scene.get(), a.c_str(), b.c_str(), &raw);
            const Text text = adopt(raw);
            if (text) emit(out_path, text.get());
            check(status);
            const double residual = number_field(text.get(), "max_residual");
            std::cerr << "max residual: " << residual << "\n";
            if (verify && !(residual <= kBisectorTolerance)) {
                std::cerr << "error: bisector verification failed\n";
                return 1;
            }
        } else if (voronoi->parsed()) {
            hv_diagram* raw = nullptr;
            check(hv_diagram_build(scene.get(), &raw));
            const Diagram diagram(raw, hv_diagram_free);
            hv_string* dump = nullptr;
            check(hv_diagram_dump(diagram.get(), &dump));
            emit(out_path, adopt(dump).get());
            if (!svg_path.empty()) {
                hv_string* svg = nullptr;
                check(hv_diagram_svg(diagram.get(), &svg));
                write_file(svg_path, adopt(svg).get());
            }
            std::cerr << "cells: " << hv_diagram_cell_count(diagram.get())
                      << ", degeneracies: " << hv_diagram_degeneracy_count(diagram.get()) << "\n";
            if (grid > 0) {
                std::size_t samples = 0, skipped = 0, mismatches = 0;
                check(hv_diagram_grid_check(diagram.get(), grid, &samples, &skipped, &mismatches));
                std::cerr << "grid check " << grid << "x" << grid << ": " << samples << " samples, " << skipped
                          << " skipped near boundaries, " << mismatches << " mismatches\n";
                if (mismatches != 0) return 1;
            }
        } else if (zregion->parsed()) {
            hv_string* raw = nullptr;
            check(hv_zregion(scene.get(), a.c_str(), b.c_str(), &raw));
            emit(out_path, adopt(raw).get());
        } else if (events->parsed()) {
            hv_string* raw = nullptr;
            check(hv_events(scene.get(), a.c_str(), x0, y0, x1, y1, b.c_str(), &raw));
            emit(out_path, adopt(raw).get());
        }
    } catch (const Failure& f) {
        return f.code;
    }
    return 0;
}
