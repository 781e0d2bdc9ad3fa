#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "scenic/geometry.hpp"

namespace scenic {

using geo::Point2;

enum class Color { Red, Blue, Landmark };

struct ColoredPoint {
    int id = 0;
    Point2 coords;
    Color color = Color::Red;
    double weight = 1.0;
};

// Identifies a viewable site pair. Bipartite mode: (red id, blue id).
// All-pairs mode: first < second.
struct PairId {
    int first = 0;
    int second = 0;

    friend constexpr auto operator<=>(const PairId&, const PairId&) = default;
};

using CurveGeometry = std::variant<geo::LineCurve, geo::CircleCurve>;

struct ScenicCurve {
    int id = 0;
    CurveGeometry geometry;
    std::vector<PairId> pairs;  // sorted; several when pair loci coincide

    bool is_line() const { return std::holds_alternative<geo::LineCurve>(geometry); }
    double distance_to(Point2 p) const;
};

struct Box {
    double xmin = 0.0;
    double ymin = 0.0;
    double xmax = 0.0;
    double ymax = 0.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double diagonal() const { return std::hypot(width(), height()); }
    bool contains(Point2 p, double eps = 0.0) const {
        return p.x >= xmin - eps && p.x <= xmax + eps && p.y >= ymin - eps && p.y <= ymax + eps;
    }
    friend bool operator==(const Box&, const Box&) = default;
};

enum class PairMode { Bipartite, AllPairs };

struct AutoBox {
    double expand_factor = 1.5;
};

struct Config {
    std::vector<ColoredPoint> points;
    PairMode mode = PairMode::Bipartite;
    std::variant<AutoBox, Box> box = AutoBox{};
    double eps_abs = 1e-9;
    std::size_t max_curves = 1000;
};

enum class NodeKind { Intersection, BoundaryLeaf, CircleAnchor };

struct GraphNode {
    Point2 coords;
    NodeKind kind = NodeKind::Intersection;
    std::vector<int> curves;  // sorted ids of curves through this node
};

struct Segment {
    Point2 from;
    Point2 to;
};

using EdgeGeometry = std::variant<Segment, geo::Arc>;

// Undirected edge. Arcs run counterclockwise from u to v; a self-loop has u == v.
struct GraphEdge {
    int u = 0;
    int v = 0;
    int curve = 0;
    EdgeGeometry geometry;
    double length = 0.0;
    std::vector<PairId> pairs;

    bool is_loop() const { return u == v; }
    int other(int node) const { return node == u ? v : u; }
    Point2 point_at_fraction(double f) const;
};

// The scenic graph G(I_P, E_P) plus everything needed to interpret it: the
// sites, the full pair list (the completeness denominator), and the curves.
// Node, edge and curve ids are their indices.
struct ScenicGraph {
    Box box;
    geo::Tolerance tolerance;
    PairMode mode = PairMode::Bipartite;
    std::vector<ColoredPoint> sites;
    std::vector<PairId> all_pairs;
    std::vector<ScenicCurve> curves;
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;
    bool disconnected_coverage = false;

    std::size_t intersection_count() const;
    std::vector<std::vector<int>> incident_edges() const;
    // Edge incidences; a self-loop counts twice.
    std::vector<int> degrees() const;
    const ColoredPoint& site(int id) const;
};

void validate(const Config& cfg);
Box working_box(const Config& cfg);
geo::Tolerance working_tolerance(const Config& cfg);
std::vector<PairId> enumerate_pairs(const Config& cfg);

/// Scenic locus of a site pair: the perpendicular bisector when the weights
/// agree within tolerance, else the Apollonius circle where
/// w_r * d(P, b) = w_b * d(P, r). Throws DataError on coincident sites.
CurveGeometry scenic_curve(const ColoredPoint& r, const ColoredPoint& b,
                           const geo::Tolerance& tol);

std::vector<ScenicCurve> build_curves(const Config& cfg);
ScenicGraph build_graph(std::span<const ScenicCurve> curves, const Config& cfg);
inline ScenicGraph build_graph(const Config& cfg) { return build_graph(build_curves(cfg), cfg); }

struct Coverage {
    std::vector<PairId> pairs;
    double completeness = 0.0;
};

Coverage pair_coverage(const ScenicGraph& g, std::span<const int> edge_ids);

// Connected-component label per node (self-loops do not connect anything).
std::vector<int> connected_components(const ScenicGraph& g, int* count = nullptr);

}  // namespace scenic
