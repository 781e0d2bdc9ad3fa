#include <algorithm>
#include <numeric>
#include <queue>
#include <tuple>

#include "scenic/routing.hpp"

namespace scenic::routing {

Navigator::Navigator(const ScenicGraph& g, const ApspTable& table)
    : g_(g), table_(table) {
    component_ = connected_components(g, &components_);
    tree_.assign(static_cast<std::size_t>(components_), {});
    if (components_ < 2) return;

    // Closest node pair for every pair of components.
    const std::size_t k = static_cast<std::size_t>(components_);
    std::vector<Bridge> closest(k * k, Bridge{-1, -1, kUnreachable});
    for (std::size_t x = 0; x < g.nodes.size(); ++x) {
        for (std::size_t y = x + 1; y < g.nodes.size(); ++y) {
            int cx = component_[x];
            int cy = component_[y];
            if (cx == cy) continue;
            int from = static_cast<int>(x);
            int to = static_cast<int>(y);
            if (cx > cy) {
                std::swap(cx, cy);
                std::swap(from, to);
            }
            const double d = geo::distance(g.nodes[x].coords, g.nodes[y].coords);
            Bridge& best = closest[static_cast<std::size_t>(cx) * k + static_cast<std::size_t>(cy)];
            if (d < best.length) best = Bridge{from, to, d};
        }
    }

    // Kruskal over the complete component graph.
    std::vector<std::tuple<double, int, int>> order;
    for (int a = 0; a < components_; ++a)
        for (int b = a + 1; b < components_; ++b)
            order.emplace_back(closest[static_cast<std::size_t>(a) * k + b].length, a, b);
    std::sort(order.begin(), order.end());
    std::vector<int> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int c) {
        while (parent[c] != c) c = parent[c] = parent[parent[c]];
        return c;
    };
    for (const auto& [d, a, b] : order) {
        const int ra = root(a);
        const int rb = root(b);
        if (ra == rb) continue;
        parent[std::max(ra, rb)] = std::min(ra, rb);
        const int id = static_cast<int>(bridges_.size());
        bridges_.push_back(closest[static_cast<std::size_t>(a) * k + b]);
        tree_[a].push_back(id);
        tree_[b].push_back(id);
    }
}

std::vector<Navigator::Bridge> Navigator::bridge_path(int a, int b) const {
    std::vector<int> via(static_cast<std::size_t>(components_), -1);
    std::vector<bool> seen(static_cast<std::size_t>(components_), false);
    std::queue<int> frontier;
    frontier.push(a);
    seen[a] = true;
    while (!frontier.empty()) {
        const int c = frontier.front();
        frontier.pop();
        if (c == b) break;
        for (int id : tree_[c]) {
            const Bridge& br = bridges_[id];
            const int other = component_[br.from] == c ? component_[br.to] : component_[br.from];
            if (seen[other]) continue;
            seen[other] = true;
            via[other] = id;
            frontier.push(other);
        }
    }
    std::vector<Bridge> path;
    for (int c = b; c != a;) {
        Bridge br = bridges_[via[c]];
        if (component_[br.to] != c) std::swap(br.from, br.to);
        path.push_back(br);
        c = component_[br.from];
    }
    std::reverse(path.begin(), path.end());
    return path;
}

double Navigator::distance(int from, int to) const {
    if (component_[from] == component_[to]) return table_.distance(from, to);
    double total = 0.0;
    int cur = from;
    for (const Bridge& br : bridge_path(component_[from], component_[to])) {
        total += table_.distance(cur, br.from) + br.length;
        cur = br.to;
    }
    return total + table_.distance(cur, to);
}

std::vector<RouteStep> Navigator::walk(int from, int to) const {
    std::vector<RouteStep> steps;
    auto scenic_leg = [&](int a, int b) {
        const std::vector<int> nodes = table_.path_nodes(a, b);
        const std::vector<int> edges = table_.path_edges(a, b);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const GraphEdge& e = g_.edges[edges[i]];
            const bool forward = e.u == nodes[i] && e.v == nodes[i + 1];
            steps.push_back({edges[i], nodes[i], nodes[i + 1],
                             forward ? Direction::Forward : Direction::Backward, true, e.length});
        }
    };
    int cur = from;
    if (component_[from] != component_[to]) {
        for (const Bridge& br : bridge_path(component_[from], component_[to])) {
            scenic_leg(cur, br.from);
            steps.push_back({-1, br.from, br.to, Direction::Forward, false, br.length});
            cur = br.to;
        }
    }
    scenic_leg(cur, to);
    return steps;
}

}  // namespace scenic::routing
