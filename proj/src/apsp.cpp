#include <string>

#include "scenic/errors.hpp"
#include "scenic/routing.hpp"

namespace scenic::routing {

ApspTable apsp(const ScenicGraph& g, std::size_t max_nodes) {
    const std::size_t n = g.nodes.size();
    if (n > max_nodes)
        throw CapExceeded("scenic graph has " + std::to_string(n) +
                          " nodes, above the all-pairs shortest path cap of " +
                          std::to_string(max_nodes) + "; use a smaller configuration or box");

    ApspTable t;
    t.n_ = n;
    t.dist_.assign(n * n, kUnreachable);
    t.next_.assign(n * n, -1);
    t.direct_.assign(n * n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        t.dist_[i * n + i] = 0.0;
        t.next_[i * n + i] = static_cast<int>(i);
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& edge = g.edges[e];
        if (edge.is_loop()) continue;
        const std::size_t uv = t.index(edge.u, edge.v);
        const std::size_t vu = t.index(edge.v, edge.u);
        if (edge.length < t.dist_[uv]) {
            t.dist_[uv] = t.dist_[vu] = edge.length;
            t.next_[uv] = edge.v;
            t.next_[vu] = edge.u;
            t.direct_[uv] = t.direct_[vu] = static_cast<int>(e);
        }
    }

    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const double dik = t.dist_[i * n + k];
            if (dik == kUnreachable) continue;
            const int hop = t.next_[i * n + k];
            double* row = &t.dist_[i * n];
            const double* krow = &t.dist_[k * n];
            for (std::size_t j = 0; j < n; ++j) {
                const double via = dik + krow[j];
                if (via < row[j]) {
                    row[j] = via;
                    t.next_[i * n + j] = hop;
                }
            }
        }
    }

    // Re-sum every path from its source so that reconstructed paths and
    // distances agree bit for bit.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || t.next_[i * n + j] < 0) continue;
            double sum = 0.0;
            std::size_t cur = i;
            while (cur != j) {
                const std::size_t hop = static_cast<std::size_t>(t.next_[cur * n + j]);
                sum += g.edges[t.direct_[cur * n + hop]].length;
                cur = hop;
            }
            t.dist_[i * n + j] = sum;
        }
    }
    return t;
}

std::vector<int> ApspTable::path_nodes(int from, int to) const {
    if (!reachable(from, to)) return {};
    std::vector<int> path{from};
    int cur = from;
    while (cur != to) {
        cur = next_[index(cur, to)];
        path.push_back(cur);
    }
    return path;
}

std::vector<int> ApspTable::path_edges(int from, int to) const {
    const std::vector<int> nodes = path_nodes(from, to);
    std::vector<int> edges;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        edges.push_back(direct_[index(nodes[i], nodes[i + 1])]);
    return edges;
}

}  // namespace scenic::routing
