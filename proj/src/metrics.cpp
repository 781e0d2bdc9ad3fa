#include <algorithm>
#include <map>
#include <string>

#include "scenic/errors.hpp"
#include "scenic/routing.hpp"

namespace scenic::routing {

std::vector<int> Route::node_sequence() const {
    std::vector<int> nodes;
    if (start >= 0) nodes.push_back(start);
    for (const auto& s : steps) {
        if (nodes.empty()) nodes.push_back(s.from);
        nodes.push_back(s.to);
    }
    return nodes;
}

std::vector<RouteStep> Route::connectors() const {
    std::vector<RouteStep> out;
    std::copy_if(steps.begin(), steps.end(), std::back_inserter(out),
                 [](const RouteStep& s) { return s.is_connector(); });
    return out;
}

RequirementOrder RequirementOrder::only_scenic_first() {
    return {{Requirement::OnlyScenic, Requirement::Completeness, Requirement::EdgeCount,
             Requirement::RepeatedEdges, Requirement::RouteLength}};
}

RequirementOrder RequirementOrder::completeness_first() {
    return {{Requirement::Completeness, Requirement::OnlyScenic, Requirement::RouteLength,
             Requirement::RepeatedEdges, Requirement::EdgeCount}};
}

RouteMetrics route_metrics(const ScenicGraph& g, const Route& route) {
    RouteMetrics m;
    std::map<int, int> traversals;
    std::vector<int> scenic_edges;
    int previous_curve = -1;
    for (const auto& step : route.steps) {
        if (step.is_connector()) {
            m.nonscenic_length += step.length;
            continue;
        }
        if (step.edge >= static_cast<int>(g.edges.size()))
            throw DataError("route references unknown edge " + std::to_string(step.edge));
        const GraphEdge& e = g.edges[step.edge];
        m.scenic_length += e.length;
        ++m.edge_count;
        ++traversals[step.edge];
        scenic_edges.push_back(step.edge);
        if (previous_curve >= 0 && e.curve != previous_curve) ++m.direction_changes;
        previous_curve = e.curve;
    }
    for (const auto& [edge, count] : traversals)
        m.repeated_length += (count - 1) * g.edges[edge].length;
    m.completeness = pair_coverage(g, scenic_edges).completeness;
    return m;
}

namespace {

// Positive when a is better on this requirement.
int better(const RouteMetrics& a, const RouteMetrics& b, Requirement r) {
    auto lower = [](double x, double y) { return x < y ? 1 : (y < x ? -1 : 0); };
    switch (r) {
        case Requirement::OnlyScenic: return lower(a.nonscenic_length, b.nonscenic_length);
        case Requirement::Completeness: return -lower(a.completeness, b.completeness);
        case Requirement::RouteLength: return lower(a.total_length(), b.total_length());
        case Requirement::RepeatedEdges: return lower(a.repeated_length, b.repeated_length);
        case Requirement::EdgeCount: return lower(a.edge_count, b.edge_count);
    }
    return 0;
}

}  // namespace

std::weak_ordering compare_routes(const RouteMetrics& a, const RouteMetrics& b,
                                  const RequirementOrder& order) {
    for (Requirement r : order.priority) {
        const int c = better(a, b, r);
        if (c > 0) return std::weak_ordering::less;
        if (c < 0) return std::weak_ordering::greater;
    }
    return std::weak_ordering::equivalent;
}

void check_well_formed(const ScenicGraph& g, const Route& route) {
    const int n = static_cast<int>(g.nodes.size());
    auto node_ok = [n](int v) { return v >= 0 && v < n; };
    if (!route.steps.empty() && route.start >= 0 && route.steps.front().from != route.start)
        throw DataError("route does not begin at its start node");
    for (std::size_t i = 0; i < route.steps.size(); ++i) {
        const auto& s = route.steps[i];
        const std::string where = "step " + std::to_string(i);
        if (!node_ok(s.from) || !node_ok(s.to)) throw DataError(where + " leaves the graph");
        if (i > 0 && route.steps[i - 1].to != s.from)
            throw DataError(where + " does not continue from the previous step");
        if (s.is_connector()) {
            if (s.scenic) throw DataError(where + " is a connector flagged scenic");
            continue;
        }
        if (s.edge >= static_cast<int>(g.edges.size()))
            throw DataError(where + " references an unknown edge");
        if (!s.scenic) throw DataError(where + " traverses an edge but is flagged non-scenic");
        const GraphEdge& e = g.edges[s.edge];
        const bool forward = s.from == e.u && s.to == e.v;
        const bool backward = s.from == e.v && s.to == e.u;
        if (!(s.direction == Direction::Forward ? forward : backward))
            throw DataError(where + " does not match its edge endpoints");
    }
    if (route.closed && !route.steps.empty() && route.steps.back().to != route.steps.front().from)
        throw DataError("route flagged closed does not return to its start");
}

}  // namespace scenic::routing
