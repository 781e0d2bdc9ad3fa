#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scenic/flat_lattice.hpp"
#include "scenic/routing.hpp"
#include "scenic/scenic_graph.hpp"

namespace scenic::io {

using Json = nlohmann::ordered_json;

// Everything an input document can carry. `config` is filled for 2D
// documents, `points_d` for every document.
struct InputDocument {
    Config config;
    int dimension = 2;
    std::vector<lattice::ColoredPointD> points_d;
    std::optional<lattice::BoxD> box_d;
    routing::RoutingOptions routing;
    std::string order = "sec2";
    std::optional<int> depth_limit;
    std::size_t max_flats = 10000;
};

/// Validates and converts an input document. Errors are DataError with a
/// JSON-pointer prefix such as "/points/2/weight: weight must be positive".
InputDocument parse_input(const Json& doc);
InputDocument parse_config(const std::filesystem::path& path);

Json read_json(const std::filesystem::path& path);
// Canonical text form: two-space indent, trailing newline.
std::string dump(const Json& doc);
// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& text);

routing::RequirementOrder order_preset(const std::string& name);

Json graph_to_json(const ScenicGraph& g);
ScenicGraph graph_from_json(const Json& doc);

Json route_to_json(const routing::Route& route);
routing::Route route_from_json(const Json& doc);

// Per-route metrics, steps, a graph summary, and the ranking under `order`.
Json report_to_json(const ScenicGraph& g, const std::vector<routing::Route>& routes,
                    const std::string& order);

Json lattice_to_json(const lattice::FlatLattice& lat, const lattice::FlatRoute& route);

/// SVG 1.1 drawing of the box, sites, curves, intersection nodes and routes.
/// The y axis points up, as in the input coordinates.
std::string render_svg(const ScenicGraph& g, const std::vector<routing::Route>& routes);

}  // namespace scenic::io
