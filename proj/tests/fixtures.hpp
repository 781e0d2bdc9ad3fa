#pragma once

#include <set>
#include <vector>

#include "scenic/scenic_graph.hpp"

namespace fixture {

using scenic::Box;
using scenic::Color;
using scenic::ColoredPoint;
using scenic::Config;

inline ColoredPoint red(int id, double x, double y, double w = 1.0) { return {id, {x, y}, Color::Red, w}; }
inline ColoredPoint blue(int id, double x, double y, double w = 1.0) { return {id, {x, y}, Color::Blue, w}; }
inline ColoredPoint landmark(int id, double x, double y, double w = 1.0) {
    return {id, {x, y}, Color::Landmark, w};
}

// R = (0,0); B = (4,0), (0,2), (1,4); box [-1,6] x [-1,5].
inline Config triangle() {
    Config cfg;
    cfg.points = {red(0, 0, 0), blue(1, 4, 0), blue(2, 0, 2), blue(3, 1, 4)};
    cfg.box = Box{-1, -1, 6, 5};
    return cfg;
}

// One red and three blue sites with unequal weights 2.5 / 1.5, 1.8, 2.0.
inline Config weighted_star() {
    Config cfg;
    cfg.points = {red(0, 0, 0, 2.5), blue(1, 4, 0, 1.5), blue(2, 0, 2, 1.8), blue(3, 1, 4, 2.0)};
    return cfg;
}

// Two-by-two alternating grid.
inline Config grid2x2() {
    Config cfg;
    cfg.points = {red(0, 0, 0), blue(1, 1, 0), blue(2, 0, 1), red(3, 1, 1)};
    cfg.box = Box{-1, -1, 2, 2};
    return cfg;
}

inline std::set<std::pair<int, int>> node_pairs(const scenic::ScenicGraph& g, scenic::NodeKind kind) {
    std::set<std::pair<int, int>> out;
    for (const auto& e : g.edges)
        if (e.u != e.v && g.nodes[e.u].kind == kind && g.nodes[e.v].kind == kind)
            out.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
    return out;
}

}  // namespace fixture
