#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "scenic/errors.hpp"
#include "scenic/routing.hpp"

namespace scenic::routing {

namespace {

class RouteBuilder {
public:
    RouteBuilder(const ScenicGraph& g, const Navigator& nav, std::string name, int start)
        : g_(g), nav_(nav), current_(start), visited_(g.nodes.size(), false) {
        route_.algorithm = std::move(name);
        route_.start = start;
        if (start >= 0) visited_[start] = true;
    }

    int current() const { return current_; }
    bool visited(int node) const { return visited_[node]; }
    bool traversed(int edge) const { return traversed_.count(edge) > 0; }
    const std::set<PairId>& covered() const { return covered_; }
    Route& route() { return route_; }

    void traverse(int edge) {
        const GraphEdge& e = g_.edges[edge];
        const bool forward = e.u == current_;
        push({edge, current_, forward ? e.v : e.u, forward ? Direction::Forward : Direction::Backward,
              true, e.length});
    }

    void go_to(int node) {
        for (const RouteStep& s : nav_.walk(current_, node)) push(s);
    }

    Route finish(bool closed) {
        route_.closed = closed;
        return std::move(route_);
    }

private:
    void push(const RouteStep& s) {
        route_.steps.push_back(s);
        current_ = s.to;
        visited_[s.to] = true;
        if (!s.is_connector()) {
            traversed_.insert(s.edge);
            covered_.insert(g_.edges[s.edge].pairs.begin(), g_.edges[s.edge].pairs.end());
        }
    }

    const ScenicGraph& g_;
    const Navigator& nav_;
    Route route_;
    int current_;
    std::vector<bool> visited_;
    std::set<int> traversed_;
    std::set<PairId> covered_;
};

std::vector<Point2> coords_of(const ScenicGraph& g, const std::vector<int>& nodes) {
    std::vector<Point2> pts;
    for (int n : nodes) pts.push_back(g.nodes[n].coords);
    return pts;
}

std::vector<int> hull_nodes(const ScenicGraph& g, const std::vector<int>& nodes) {
    const std::vector<Point2> pts = coords_of(g, nodes);
    std::vector<int> hull;
    for (std::size_t i : geo::convex_hull_indices(pts)) hull.push_back(nodes[i]);
    return hull;
}

// Edge chain of a line curve in parameter order, with its two ends.
struct LineChain {
    int curve = -1;
    std::vector<int> edges;
    int first = -1;
    int last = -1;
    int density = 0;
    double extent = 0.0;
};

}  // namespace

std::vector<int> shortest_edge_per_curve(const ScenicGraph& g) {
    std::vector<int> best(g.curves.size(), -1);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        int& b = best[g.edges[e].curve];
        if (b < 0 || g.edges[e].length < g.edges[b].length) b = static_cast<int>(e);
    }
    best.erase(std::remove(best.begin(), best.end(), -1), best.end());
    return best;
}

Route route_minmax_hull(const ScenicGraph& g, const ApspTable& table,
                        const RoutingOptions& options) {
    const Navigator nav(g, table);
    Point2 centroid;
    for (const auto& s : g.sites) centroid = centroid + s.coords;
    centroid = centroid / static_cast<double>(std::max<std::size_t>(1, g.sites.size()));
    const double bound = options.distance_bound.value_or(0.5 * g.box.diagonal());

    std::vector<int> candidates;
    for (std::size_t n = 0; n < g.nodes.size(); ++n)
        if (g.nodes[n].kind == NodeKind::Intersection &&
            geo::distance(g.nodes[n].coords, centroid) <= bound)
            candidates.push_back(static_cast<int>(n));

    if (candidates.size() < 3) {
        if (g.edges.empty()) {
            Route r;
            r.algorithm = "minmax-hull";
            r.degenerate = true;
            return r;
        }
        int longest = 0;
        for (std::size_t e = 1; e < g.edges.size(); ++e)
            if (g.edges[e].length > g.edges[longest].length) longest = static_cast<int>(e);
        const GraphEdge& e = g.edges[longest];
        RouteBuilder b(g, nav, "minmax-hull", e.u);
        b.traverse(longest);
        if (!e.is_loop()) b.traverse(longest);
        b.route().waypoints = {e.u, e.v};
        b.route().degenerate = true;
        return b.finish(true);
    }

    const std::vector<int> hull = hull_nodes(g, candidates);
    RouteBuilder b(g, nav, "minmax-hull", hull.front());
    b.route().waypoints = hull;
    for (std::size_t i = 1; i < hull.size(); ++i) b.go_to(hull[i]);
    b.go_to(hull.front());
    // Two hull vertices: every candidate is collinear, so the route runs out and back.
    b.route().degenerate = hull.size() < 3;
    return b.finish(true);
}

Route route_densest_line(const ScenicGraph& g, const ApspTable& table,
                         const RoutingOptions& options) {
    std::vector<LineChain> lines;
    for (const auto& c : g.curves) {
        if (!c.is_line()) continue;
        LineChain chain;
        chain.curve = c.id;
        std::set<int> intersections;
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            const GraphEdge& edge = g.edges[e];
            if (edge.curve != c.id) continue;
            chain.edges.push_back(static_cast<int>(e));
            chain.extent += edge.length;
            for (int n : {edge.u, edge.v})
                if (g.nodes[n].kind == NodeKind::Intersection) intersections.insert(n);
        }
        if (chain.edges.empty()) continue;
        chain.first = g.edges[chain.edges.front()].u;
        chain.last = g.edges[chain.edges.back()].v;
        chain.density = static_cast<int>(intersections.size());
        lines.push_back(std::move(chain));
    }
    if (lines.empty())
        throw DataError(
            "densest-line needs at least one straight scenic curve inside the box; use acu, "
            "acch or dpe for weighted configurations");

    std::sort(lines.begin(), lines.end(), [](const LineChain& a, const LineChain& b) {
        return std::tuple(-a.density, -a.extent, a.curve) < std::tuple(-b.density, -b.extent, b.curve);
    });
    const int default_k = std::max(2, static_cast<int>(std::ceil(g.curves.size() / 4.0)));
    const std::size_t k = static_cast<std::size_t>(std::max(1, options.top_k.value_or(default_k)));

    std::vector<LineChain> selected;
    std::set<PairId> covered;
    for (const LineChain& line : lines) {
        if (selected.size() >= k || covered.size() >= g.all_pairs.size()) break;
        selected.push_back(line);
        const auto& pairs = g.curves[line.curve].pairs;
        covered.insert(pairs.begin(), pairs.end());
    }

    // Alpha-shape boundary over the selected lines' endpoints.
    std::vector<int> ends;
    for (const auto& line : selected) {
        ends.push_back(line.first);
        ends.push_back(line.last);
    }
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    std::set<std::pair<int, int>> boundary;
    if (ends.size() >= 3) {
        const std::vector<Point2> pts = coords_of(g, ends);
        double alpha = 0.0;
        if (options.alpha) {
            alpha = *options.alpha;
        } else {
            std::vector<double> spacing;
            for (std::size_t i = 0; i < pts.size(); ++i)
                for (std::size_t j = i + 1; j < pts.size(); ++j)
                    spacing.push_back(geo::distance(pts[i], pts[j]));
            std::nth_element(spacing.begin(), spacing.begin() + spacing.size() / 2, spacing.end());
            const double median = spacing[spacing.size() / 2];
            alpha = median > 0.0 ? 2.0 / median : 1.0;
        }
        for (const auto& [i, j] : geo::alpha_shape(pts, alpha)) {
            boundary.insert({ends[i], ends[j]});
            boundary.insert({ends[j], ends[i]});
        }
    }

    const Navigator nav(g, table);
    RouteBuilder b(g, nav, "densest-line", selected.front().first);
    auto run_line = [&](const LineChain& line, int entry) {
        b.route().waypoints.push_back(entry);
        if (entry == line.first) {
            for (int e : line.edges) b.traverse(e);
        } else {
            for (auto it = line.edges.rbegin(); it != line.edges.rend(); ++it) b.traverse(*it);
        }
        b.route().waypoints.push_back(b.current());
    };
    run_line(selected.front(), selected.front().first);

    std::vector<bool> done(selected.size(), false);
    done[0] = true;
    for (std::size_t round = 1; round < selected.size(); ++round) {
        const int cur = b.current();
        std::tuple<int, double, int, std::size_t> best{2, kUnreachable, 0, 0};
        for (std::size_t i = 0; i < selected.size(); ++i) {
            if (done[i]) continue;
            for (int end : {selected[i].first, selected[i].last}) {
                const int off_boundary = boundary.count({cur, end}) ? 0 : 1;
                best = std::min(best, std::tuple(off_boundary, nav.distance(cur, end), end, i));
            }
        }
        const auto [unused, dist, end, i] = best;
        done[i] = true;
        b.go_to(end);
        run_line(selected[i], end);
    }
    return b.finish(false);
}

Route route_acu(const ScenicGraph& g, const ApspTable& table) {
    std::vector<int> chosen = shortest_edge_per_curve(g);
    if (chosen.empty()) {
        Route r;
        r.algorithm = "acu";
        return r;
    }
    auto low_end = [&](int e) {
        const GraphEdge& edge = g.edges[e];
        return g.nodes[edge.v].coords < g.nodes[edge.u].coords ? edge.v : edge.u;
    };
    const int first = *std::min_element(chosen.begin(), chosen.end(), [&](int a, int b) {
        const Point2 pa = g.nodes[low_end(a)].coords;
        const Point2 pb = g.nodes[low_end(b)].coords;
        if (pa != pb) return pa < pb;
        return a < b;
    });

    const Navigator nav(g, table);
    RouteBuilder b(g, nav, "acu", low_end(first));
    b.route().waypoints.push_back(b.current());
    b.traverse(first);
    for (;;) {
        std::erase_if(chosen, [&](int e) { return b.traversed(e); });
        if (chosen.empty()) break;
        std::tuple<double, int, int> best{kUnreachable, 0, -1};
        for (int e : chosen)
            for (int end : {g.edges[e].u, g.edges[e].v})
                best = std::min(best, std::tuple(nav.distance(b.current(), end), end, e));
        const auto [dist, end, edge] = best;
        b.go_to(end);
        b.route().waypoints.push_back(end);
        b.traverse(edge);
    }
    return b.finish(false);
}

Route route_acch(const ScenicGraph& g, const ApspTable& table) {
    std::vector<int> s_nodes;
    for (int e : shortest_edge_per_curve(g)) {
        s_nodes.push_back(g.edges[e].u);
        s_nodes.push_back(g.edges[e].v);
    }
    std::sort(s_nodes.begin(), s_nodes.end());
    s_nodes.erase(std::unique(s_nodes.begin(), s_nodes.end()), s_nodes.end());
    const std::vector<int> hull = hull_nodes(g, s_nodes);
    if (hull.size() < 3) {
        Route r = route_acu(g, table);
        r.algorithm = "acch";
        r.fallback = true;
        return r;
    }

    const Navigator nav(g, table);
    RouteBuilder b(g, nav, "acch", hull.front());
    b.route().waypoints.push_back(hull.front());
    for (std::size_t i = 1; i < hull.size(); ++i) {
        // Already joined to the route by an earlier path: no new connection.
        if (b.visited(hull[i])) {
            b.route().skipped_waypoints.push_back(hull[i]);
            continue;
        }
        b.go_to(hull[i]);
        b.route().waypoints.push_back(hull[i]);
    }
    b.go_to(hull.front());
    return b.finish(true);
}

Route route_dpe(const ScenicGraph& g, const ApspTable& table) {
    if (g.nodes.empty()) {
        Route r;
        r.algorithm = "dpe";
        return r;
    }
    const std::vector<int> degree = g.degrees();
    const std::vector<std::vector<int>> incident = g.incident_edges();
    const int start = static_cast<int>(std::max_element(degree.begin(), degree.end()) - degree.begin());

    const Navigator nav(g, table);
    RouteBuilder b(g, nav, "dpe", start);
    b.route().waypoints.push_back(start);
    auto gain = [&](int e) {
        int fresh = 0;
        for (const PairId& p : g.edges[e].pairs) fresh += b.covered().count(p) == 0;
        return fresh;
    };
    while (b.covered().size() < g.all_pairs.size()) {
        const int cur = b.current();
        int pick = -1;
        std::tuple<int, int, double, int> best{0, 0, 0.0, 0};
        for (int e : incident[cur]) {
            const int fresh = gain(e);
            if (fresh == 0) continue;
            const auto key = std::tuple(-fresh, -degree[g.edges[e].other(cur)], g.edges[e].length, e);
            if (pick < 0 || key < best) {
                best = key;
                pick = e;
            }
        }
        if (pick >= 0) {
            b.traverse(pick);
            continue;
        }
        // Nothing new here: jump to the nearest node that still has an uncovered edge.
        std::tuple<double, int> target{kUnreachable, -1};
        for (std::size_t n = 0; n < g.nodes.size(); ++n) {
            const bool useful = std::any_of(incident[n].begin(), incident[n].end(),
                                            [&](int e) { return gain(e) > 0; });
            if (useful)
                target = std::min(target, std::tuple(nav.distance(cur, static_cast<int>(n)),
                                                     static_cast<int>(n)));
        }
        if (std::get<1>(target) < 0) break;
        b.go_to(std::get<1>(target));
        b.route().waypoints.push_back(std::get<1>(target));
    }
    return b.finish(false);
}

Route run_algorithm(const std::string& name, const ScenicGraph& g, const ApspTable& table,
                    const RoutingOptions& options) {
    if (name == "minmax-hull") return route_minmax_hull(g, table, options);
    if (name == "densest-line") return route_densest_line(g, table, options);
    if (name == "acu") return route_acu(g, table);
    if (name == "acch") return route_acch(g, table);
    if (name == "dpe") return route_dpe(g, table);
    throw DataError("unknown algorithm '" + name + "'");
}

}  // namespace scenic::routing
