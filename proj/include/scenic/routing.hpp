#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "scenic/scenic_graph.hpp"

namespace scenic::routing {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kDefaultApspCap = 2000;

// All-pairs shortest paths over the scenic graph. Parallel edges collapse to
// the shortest one; self-loops never shorten anything.
class ApspTable {
public:
    std::size_t size() const { return n_; }
    double distance(int from, int to) const { return dist_[index(from, to)]; }
    bool reachable(int from, int to) const { return next_[index(from, to)] >= 0; }
    std::vector<int> path_nodes(int from, int to) const;
    std::vector<int> path_edges(int from, int to) const;

private:
    friend ApspTable apsp(const ScenicGraph& g, std::size_t max_nodes);
    std::size_t index(int from, int to) const {
        return static_cast<std::size_t>(from) * n_ + static_cast<std::size_t>(to);
    }

    std::size_t n_ = 0;
    std::vector<double> dist_;
    std::vector<int> next_;    // first hop from `from` towards `to`, -1 if none
    std::vector<int> direct_;  // edge realizing the adjacency from-to, -1 if none
};

/// Floyd-Warshall. Distances are the left-to-right sum of edge lengths
/// along the reconstructed path from `from`, so path sums reproduce them
/// exactly. Throws CapExceeded when the graph has more than max_nodes nodes.
ApspTable apsp(const ScenicGraph& g, std::size_t max_nodes = kDefaultApspCap);

enum class Direction { Forward, Backward };

// One leg of a route: either a traversal of graph edge `edge` (scenic) or a
// straight non-scenic connector (edge == -1).
struct RouteStep {
    int edge = -1;
    int from = -1;
    int to = -1;
    Direction direction = Direction::Forward;
    bool scenic = true;
    double length = 0.0;

    bool is_connector() const { return edge < 0; }
};

struct Route {
    std::string algorithm;
    int start = -1;
    std::vector<RouteStep> steps;
    std::vector<int> waypoints;          // anchor nodes the algorithm steered through
    std::vector<int> skipped_waypoints;  // anchors already connected when reached (ACCH)
    bool closed = false;
    bool degenerate = false;
    bool fallback = false;

    std::vector<int> node_sequence() const;
    std::vector<RouteStep> connectors() const;
};

struct RouteMetrics {
    double completeness = 0.0;
    double scenic_length = 0.0;
    double nonscenic_length = 0.0;
    double repeated_length = 0.0;
    int edge_count = 0;
    int direction_changes = 0;

    double total_length() const { return scenic_length + nonscenic_length; }
    friend bool operator==(const RouteMetrics&, const RouteMetrics&) = default;
};

enum class Requirement { OnlyScenic, Completeness, RouteLength, RepeatedEdges, EdgeCount };

struct RequirementOrder {
    std::array<Requirement, 5> priority;

    // Only scenic, completeness, minimal edges, minimal repeated edges, then length.
    static RequirementOrder only_scenic_first();
    // Completeness, only scenic, route length, repeated edges, edge count.
    static RequirementOrder completeness_first();
};

RouteMetrics route_metrics(const ScenicGraph& g, const Route& route);

/// Lexicographic comparison under `order`; `less` means `a` is the better route.
std::weak_ordering compare_routes(const RouteMetrics& a, const RouteMetrics& b,
                                  const RequirementOrder& order);

// Throws DataError describing the first broken route invariant.
void check_well_formed(const ScenicGraph& g, const Route& route);

struct RoutingOptions {
    std::optional<double> distance_bound;  // min-max hull; default box half-diagonal
    std::optional<int> top_k;              // densest line; default max(2, ceil(curves / 4))
    std::optional<double> alpha;           // densest line; default 2 / median endpoint spacing
};

// Moves between arbitrary graph nodes: APSP paths inside a connected
// component, and straight connectors along a minimum spanning tree of
// closest-node bridges between components.
class Navigator {
public:
    struct Bridge {
        int from = -1;
        int to = -1;
        double length = 0.0;
    };

    Navigator(const ScenicGraph& g, const ApspTable& table);

    int component(int node) const { return component_[node]; }
    int component_count() const { return components_; }
    const std::vector<Bridge>& bridges() const { return bridges_; }
    double distance(int from, int to) const;
    std::vector<RouteStep> walk(int from, int to) const;

private:
    // Sequence of bridges (oriented) leading from component a to component b.
    std::vector<Bridge> bridge_path(int a, int b) const;

    const ScenicGraph& g_;
    const ApspTable& table_;
    std::vector<int> component_;
    int components_ = 0;
    std::vector<Bridge> bridges_;
    std::vector<std::vector<int>> tree_;  // component -> incident bridge ids
};

// Shortest edge of every curve that has in-box edges (ties: lowest edge id).
std::vector<int> shortest_edge_per_curve(const ScenicGraph& g);

Route route_minmax_hull(const ScenicGraph& g, const ApspTable& table,
                        const RoutingOptions& options = {});
Route route_densest_line(const ScenicGraph& g, const ApspTable& table,
                         const RoutingOptions& options = {});
Route route_acu(const ScenicGraph& g, const ApspTable& table);
Route route_acch(const ScenicGraph& g, const ApspTable& table);
Route route_dpe(const ScenicGraph& g, const ApspTable& table);

inline constexpr std::array<const char*, 5> kAlgorithms = {"minmax-hull", "densest-line", "acu",
                                                           "acch", "dpe"};

// Dispatch by algorithm name; throws DataError on an unknown name.
Route run_algorithm(const std::string& name, const ScenicGraph& g, const ApspTable& table,
                    const RoutingOptions& options = {});

}  // namespace scenic::routing
