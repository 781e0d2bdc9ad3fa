#include "scenic/scenic_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include "scenic/errors.hpp"

namespace scenic {

using geo::Arc;
using geo::CircleCurve;
using geo::CurveIntersection;
using geo::LineCurve;
using geo::Tolerance;

double ScenicCurve::distance_to(Point2 p) const {
    return std::visit([p](const auto& c) { return c.distance_to(p); }, geometry);
}

Point2 GraphEdge::point_at_fraction(double f) const {
    if (const auto* s = std::get_if<Segment>(&geometry)) return s->from + f * (s->to - s->from);
    return std::get<Arc>(geometry).point_at_fraction(f);
}

std::size_t ScenicGraph::intersection_count() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const auto& n) {
        return n.kind == NodeKind::Intersection;
    }));
}

std::vector<std::vector<int>> ScenicGraph::incident_edges() const {
    std::vector<std::vector<int>> inc(nodes.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        inc[edges[e].u].push_back(static_cast<int>(e));
        if (!edges[e].is_loop()) inc[edges[e].v].push_back(static_cast<int>(e));
    }
    return inc;
}

std::vector<int> ScenicGraph::degrees() const {
    std::vector<int> deg(nodes.size(), 0);
    for (const auto& e : edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

const ColoredPoint& ScenicGraph::site(int id) const {
    for (const auto& s : sites)
        if (s.id == id) return s;
    throw DataError("unknown site id " + std::to_string(id));
}

void validate(const Config& cfg) {
    if (cfg.points.empty()) throw DataError("configuration has no points");
    if (!(cfg.eps_abs > 0.0)) throw DataError("tolerance must be positive");
    std::set<int> ids;
    int reds = 0, blues = 0, landmarks = 0;
    for (const auto& p : cfg.points) {
        if (!ids.insert(p.id).second) throw DataError("duplicate point id " + std::to_string(p.id));
        if (!geo::is_finite(p.coords))
            throw DataError("point " + std::to_string(p.id) + " has non-finite coordinates");
        if (!(p.weight > 0.0) || !std::isfinite(p.weight))
            throw DataError("point " + std::to_string(p.id) + ": weight must be positive");
        reds += p.color == Color::Red;
        blues += p.color == Color::Blue;
        landmarks += p.color == Color::Landmark;
    }
    if (cfg.mode == PairMode::Bipartite) {
        if (reds == 0 || blues == 0)
            throw DataError("bipartite mode needs at least one red and one blue point");
        if (landmarks > 0) throw DataError("landmark points require all-pairs mode");
    } else if (cfg.points.size() < 2) {
        throw DataError("all-pairs mode needs at least two points");
    }
    if (const auto* box = std::get_if<Box>(&cfg.box)) {
        if (!(box->xmin < box->xmax) || !(box->ymin < box->ymax))
            throw DataError("bounding box is empty");
        for (const auto& p : cfg.points)
            if (!box->contains(p.coords))
                throw DataError("point " + std::to_string(p.id) + " lies outside the bounding box");
    } else if (!(std::get<AutoBox>(cfg.box).expand_factor >= 1.0)) {
        throw DataError("box expand factor must be at least 1");
    }
}

Box working_box(const Config& cfg) {
    if (const auto* box = std::get_if<Box>(&cfg.box)) return *box;
    const double expand = std::get<AutoBox>(cfg.box).expand_factor;
    Box b{cfg.points.front().coords.x, cfg.points.front().coords.y, cfg.points.front().coords.x,
          cfg.points.front().coords.y};
    for (const auto& p : cfg.points) {
        b.xmin = std::min(b.xmin, p.coords.x);
        b.xmax = std::max(b.xmax, p.coords.x);
        b.ymin = std::min(b.ymin, p.coords.y);
        b.ymax = std::max(b.ymax, p.coords.y);
    }
    const double span = std::max(b.width(), b.height());
    // Flat site layouts still get a box with some height (or width).
    const double floor = span > 0.0 ? 0.25 * span : 1.0;
    const double hw = expand * std::max(0.5 * b.width(), floor);
    const double hh = expand * std::max(0.5 * b.height(), floor);
    const double cx = 0.5 * (b.xmin + b.xmax);
    const double cy = 0.5 * (b.ymin + b.ymax);
    return Box{cx - hw, cy - hh, cx + hw, cy + hh};
}

Tolerance working_tolerance(const Config& cfg) {
    return Tolerance{cfg.eps_abs, working_box(cfg).diagonal()};
}

std::vector<PairId> enumerate_pairs(const Config& cfg) {
    std::vector<PairId> pairs;
    if (cfg.mode == PairMode::Bipartite) {
        for (const auto& r : cfg.points) {
            if (r.color != Color::Red) continue;
            for (const auto& b : cfg.points)
                if (b.color == Color::Blue) pairs.push_back({r.id, b.id});
        }
    } else {
        for (std::size_t i = 0; i < cfg.points.size(); ++i)
            for (std::size_t j = i + 1; j < cfg.points.size(); ++j)
                pairs.push_back({std::min(cfg.points[i].id, cfg.points[j].id),
                                 std::max(cfg.points[i].id, cfg.points[j].id)});
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

CurveGeometry scenic_curve(const ColoredPoint& r, const ColoredPoint& b, const Tolerance& tol) {
    if (geo::distance(r.coords, b.coords) <= tol.effective())
        throw DataError("degenerate pair: sites " + std::to_string(r.id) + " and " +
                        std::to_string(b.id) + " coincide");
    const double w1 = r.weight;
    const double w2 = b.weight;
    const Point2 rb = b.coords - r.coords;
    if (std::abs(w1 - w2) <= tol.eps_abs * std::max(w1, w2))
        return geo::make_line(0.5 * (r.coords + b.coords), Point2{-rb.y, rb.x});
    // Locus of d(P, r) / d(P, b) = k.
    const double k = w1 / w2;
    const double k2 = k * k;
    const Point2 center = (r.coords - k2 * b.coords) / (1.0 - k2);
    const double radius = k * geo::norm(rb) / std::abs(1.0 - k2);
    return CircleCurve{center, radius};
}

std::vector<ScenicCurve> build_curves(const Config& cfg) {
    validate(cfg);
    const std::vector<PairId> pairs = enumerate_pairs(cfg);
    if (pairs.size() > cfg.max_curves) {
        std::ostringstream msg;
        msg << "configuration yields " << pairs.size() << " scenic curves, above the cap of "
            << cfg.max_curves << "; the arrangement grows on the order of n^4 scenic lines in "
            << "the number of sites, so use fewer or representative sites";
        throw CapExceeded(msg.str());
    }
    const Tolerance tol = working_tolerance(cfg);
    auto find = [&](int id) -> const ColoredPoint& {
        for (const auto& p : cfg.points)
            if (p.id == id) return p;
        throw DataError("unknown point id");
    };

    std::vector<ScenicCurve> curves;
    for (const PairId& pair : pairs) {
        CurveGeometry geom = scenic_curve(find(pair.first), find(pair.second), tol);
        auto same = [&](const ScenicCurve& c) {
            if (c.geometry.index() != geom.index()) return false;
            if (const auto* l = std::get_if<LineCurve>(&geom))
                return geo::same_line(std::get<LineCurve>(c.geometry), *l, tol);
            return geo::same_circle(std::get<CircleCurve>(c.geometry), std::get<CircleCurve>(geom),
                                    tol);
        };
        auto it = std::find_if(curves.begin(), curves.end(), same);
        if (it != curves.end()) {
            it->pairs.push_back(pair);
        } else {
            curves.push_back({static_cast<int>(curves.size()), geom, {pair}});
        }
    }
    for (auto& c : curves) std::sort(c.pairs.begin(), c.pairs.end());
    return curves;
}

namespace {

struct RawPoint {
    Point2 p;
    int a;
    int b;
};

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

CurveIntersection intersect(const CurveGeometry& a, const CurveGeometry& b, const Tolerance& tol) {
    if (const auto* la = std::get_if<LineCurve>(&a)) {
        if (const auto* lb = std::get_if<LineCurve>(&b)) return geo::intersect_lines(*la, *lb, tol);
        return geo::intersect_line_circle(*la, std::get<CircleCurve>(b), tol);
    }
    const auto& ca = std::get<CircleCurve>(a);
    if (const auto* lb = std::get_if<LineCurve>(&b)) return geo::intersect_line_circle(*lb, ca, tol);
    return geo::intersect_circles(ca, std::get<CircleCurve>(b), tol);
}

// Merges intersection points closer than eps (transitively) and snaps each
// cluster to its centroid. Output is sorted lexicographically.
std::vector<GraphNode> cluster_intersections(std::vector<RawPoint> raw, double eps) {
    std::sort(raw.begin(), raw.end(), [](const RawPoint& l, const RawPoint& r) {
        if (l.p != r.p) return l.p < r.p;
        return std::tie(l.a, l.b) < std::tie(r.a, r.b);
    });
    UnionFind uf(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        for (std::size_t j = i + 1; j < raw.size() && raw[j].p.x - raw[i].p.x <= eps; ++j) {
            if (geo::distance(raw[i].p, raw[j].p) <= eps) uf.unite(i, j);
        }
    }
    std::vector<std::vector<std::size_t>> members(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) members[uf.find(i)].push_back(i);

    std::vector<GraphNode> nodes;
    for (const auto& m : members) {
        if (m.empty()) continue;
        GraphNode node;
        Point2 sum;
        for (std::size_t i : m) {
            sum = sum + raw[i].p;
            node.curves.push_back(raw[i].a);
            node.curves.push_back(raw[i].b);
        }
        node.coords = sum / static_cast<double>(m.size());
        std::sort(node.curves.begin(), node.curves.end());
        node.curves.erase(std::unique(node.curves.begin(), node.curves.end()), node.curves.end());
        nodes.push_back(std::move(node));
    }
    std::sort(nodes.begin(), nodes.end(), [](const GraphNode& l, const GraphNode& r) {
        if (l.coords != r.coords) return l.coords < r.coords;
        return l.curves < r.curves;
    });
    return nodes;
}

// Parameter interval of the line inside the box, if it has positive length.
std::optional<std::pair<double, double>> clip_line(const LineCurve& l, const Box& box,
                                                   double eps) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    const double origin[2] = {l.anchor.x, l.anchor.y};
    const double dir[2] = {l.direction.x, l.direction.y};
    const double mins[2] = {box.xmin, box.ymin};
    const double maxs[2] = {box.xmax, box.ymax};
    for (int k = 0; k < 2; ++k) {
        if (std::abs(dir[k]) < 1e-15) {
            if (origin[k] < mins[k] - eps || origin[k] > maxs[k] + eps) return std::nullopt;
            continue;
        }
        double t0 = (mins[k] - origin[k]) / dir[k];
        double t1 = (maxs[k] - origin[k]) / dir[k];
        if (t0 > t1) std::swap(t0, t1);
        lo = std::max(lo, t0);
        hi = std::min(hi, t1);
    }
    if (hi - lo <= eps) return std::nullopt;
    return std::pair{lo, hi};
}

// Angles at which the circle meets the box boundary, sorted ascending.
std::vector<double> box_crossings(const CircleCurve& c, const Box& box, double eps) {
    std::vector<double> angles;
    auto vertical = [&](double x) {
        const double dx = x - c.center.x;
        const double h2 = c.radius * c.radius - dx * dx;
        if (h2 < 0.0) return;
        const double h = std::sqrt(h2);
        for (double y : {c.center.y - h, c.center.y + h})
            if (y >= box.ymin - eps && y <= box.ymax + eps) angles.push_back(c.angle_of({x, y}));
    };
    auto horizontal = [&](double y) {
        const double dy = y - c.center.y;
        const double h2 = c.radius * c.radius - dy * dy;
        if (h2 < 0.0) return;
        const double h = std::sqrt(h2);
        for (double x : {c.center.x - h, c.center.x + h})
            if (x >= box.xmin - eps && x <= box.xmax + eps) angles.push_back(c.angle_of({x, y}));
    };
    vertical(box.xmin);
    vertical(box.xmax);
    horizontal(box.ymin);
    horizontal(box.ymax);
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end(),
                             [](double a, double b) { return b - a <= 1e-12; }),
                 angles.end());
    if (angles.size() > 1 && angles.front() + geo::kTwoPi - angles.back() <= 1e-12) angles.pop_back();
    return angles;
}

class GraphBuilder {
public:
    GraphBuilder(ScenicGraph& g, double eps) : g_(g), eps_(eps) {}

    int add_node(Point2 p, NodeKind kind, int curve) {
        if (kind == NodeKind::BoundaryLeaf) p = snap_to_box(p);
        g_.nodes.push_back({p, kind, {curve}});
        return static_cast<int>(g_.nodes.size()) - 1;
    }

    // Leaves sit exactly on the box side they were clipped against.
    Point2 snap_to_box(Point2 p) const {
        const Box& b = g_.box;
        auto snap = [this](double x, double lo, double hi) {
            if (std::abs(x - lo) <= eps_) return lo;
            if (std::abs(x - hi) <= eps_) return hi;
            return x;
        };
        return {snap(p.x, b.xmin, b.xmax), snap(p.y, b.ymin, b.ymax)};
    }

    void add_edge(int u, int v, const ScenicCurve& curve, EdgeGeometry geom, double length) {
        g_.edges.push_back({u, v, curve.id, std::move(geom), length, curve.pairs});
    }

    void build_line(const ScenicCurve& curve, const std::vector<int>& on_curve) {
        const auto& line = std::get<LineCurve>(curve.geometry);
        const auto span = clip_line(line, g_.box, eps_);
        if (!span) return;
        std::vector<std::pair<double, int>> chain;
        for (int n : on_curve) chain.push_back({line.parameter_of(g_.nodes[n].coords), n});
        std::sort(chain.begin(), chain.end());
        if (chain.empty() || geo::distance(g_.nodes[chain.front().second].coords,
                                           line.point_at(span->first)) > eps_) {
            chain.insert(chain.begin(), {span->first, add_node(line.point_at(span->first),
                                                               NodeKind::BoundaryLeaf, curve.id)});
        }
        if (geo::distance(g_.nodes[chain.back().second].coords, line.point_at(span->second)) >
            eps_) {
            chain.push_back({span->second, add_node(line.point_at(span->second),
                                                    NodeKind::BoundaryLeaf, curve.id)});
        }
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            const Point2 a = g_.nodes[chain[i].second].coords;
            const Point2 b = g_.nodes[chain[i + 1].second].coords;
            add_edge(chain[i].second, chain[i + 1].second, curve, Segment{a, b},
                     geo::distance(a, b));
        }
    }

    void build_circle(const ScenicCurve& curve, const std::vector<int>& on_curve) {
        const auto& circle = std::get<CircleCurve>(curve.geometry);
        const Box& box = g_.box;
        const bool inside = circle.center.x - circle.radius >= box.xmin - eps_ &&
                            circle.center.x + circle.radius <= box.xmax + eps_ &&
                            circle.center.y - circle.radius >= box.ymin - eps_ &&
                            circle.center.y + circle.radius <= box.ymax + eps_;
        if (inside) {
            build_closed_circle(curve, circle, on_curve);
            return;
        }
        const std::vector<double> cuts = box_crossings(circle, box, eps_);
        if (cuts.empty()) return;

        // In-box angular intervals, with adjacent inside intervals merged.
        std::vector<std::pair<double, double>> spans;
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            const double s = cuts[i];
            const double e = i + 1 < cuts.size() ? cuts[i + 1] : cuts.front() + geo::kTwoPi;
            if (e - s <= 1e-12) continue;
            if (!box.contains(circle.point_at(0.5 * (s + e)), eps_)) continue;
            if (!spans.empty() && std::abs(spans.back().second - s) <= 1e-12) {
                spans.back().second = e;
            } else {
                spans.push_back({s, e});
            }
        }
        if (spans.size() > 1 &&
            std::abs(spans.back().second - (spans.front().first + geo::kTwoPi)) <= 1e-12) {
            spans.front() = {spans.back().first, spans.front().second + geo::kTwoPi};
            spans.pop_back();
        }
        if (spans.size() == 1 && spans.front().second - spans.front().first >= geo::kTwoPi - 1e-12) {
            build_closed_circle(curve, circle, on_curve);
            return;
        }
        for (const auto& [s, e] : spans) build_arc_chain(curve, circle, on_curve, s, e);
    }

private:
    void build_closed_circle(const ScenicCurve& curve, const CircleCurve& circle,
                             const std::vector<int>& on_curve) {
        std::vector<std::pair<double, int>> ring;
        for (int n : on_curve) ring.push_back({circle.angle_of(g_.nodes[n].coords), n});
        std::sort(ring.begin(), ring.end());
        if (ring.empty()) {
            const int anchor = add_node(circle.point_at(0.0), NodeKind::CircleAnchor, curve.id);
            ring.push_back({0.0, anchor});
        }
        if (ring.size() == 1) {
            const Arc arc{circle, ring.front().first, geo::kTwoPi};
            add_edge(ring.front().second, ring.front().second, curve, arc, geo::arc_length(arc));
            return;
        }
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const auto [a0, u] = ring[i];
            const auto [a1, v] = ring[(i + 1) % ring.size()];
            const double sweep = i + 1 < ring.size() ? a1 - a0 : a1 + geo::kTwoPi - a0;
            if (!(sweep > 0.0)) continue;
            const Arc arc{circle, a0, sweep};
            add_edge(u, v, curve, arc, geo::arc_length(arc));
        }
    }

    void build_arc_chain(const ScenicCurve& curve, const CircleCurve& circle,
                         const std::vector<int>& on_curve, double s, double e) {
        std::vector<std::pair<double, int>> chain;
        for (int n : on_curve) {
            double a = circle.angle_of(g_.nodes[n].coords);
            if (a < s) a += geo::kTwoPi;
            if (a > e + 1e-12 && a - geo::kTwoPi >= s - 1e-12) a -= geo::kTwoPi;
            if (a >= s - 1e-12 && a <= e + 1e-12) chain.push_back({a, n});
        }
        std::sort(chain.begin(), chain.end());
        if (chain.empty() ||
            geo::distance(g_.nodes[chain.front().second].coords, circle.point_at(s)) > eps_) {
            chain.insert(chain.begin(),
                         {s, add_node(circle.point_at(s), NodeKind::BoundaryLeaf, curve.id)});
        }
        if (geo::distance(g_.nodes[chain.back().second].coords, circle.point_at(e)) > eps_) {
            chain.push_back({e, add_node(circle.point_at(e), NodeKind::BoundaryLeaf, curve.id)});
        }
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            const double sweep = chain[i + 1].first - chain[i].first;
            if (!(sweep > 0.0)) continue;
            const Arc arc{circle, geo::normalize_angle(chain[i].first), sweep};
            add_edge(chain[i].second, chain[i + 1].second, curve, arc, geo::arc_length(arc));
        }
    }

    ScenicGraph& g_;
    double eps_;
};

}  // namespace

ScenicGraph build_graph(std::span<const ScenicCurve> curves, const Config& cfg) {
    validate(cfg);
    ScenicGraph g;
    g.box = working_box(cfg);
    g.tolerance = Tolerance{cfg.eps_abs, g.box.diagonal()};
    g.mode = cfg.mode;
    g.sites = cfg.points;
    g.all_pairs = enumerate_pairs(cfg);
    g.curves.assign(curves.begin(), curves.end());
    const double eps = g.tolerance.effective();

    std::vector<RawPoint> raw;
    for (std::size_t i = 0; i < g.curves.size(); ++i) {
        for (std::size_t j = i + 1; j < g.curves.size(); ++j) {
            const auto hit = intersect(g.curves[i].geometry, g.curves[j].geometry, g.tolerance);
            for (const Point2& p : hit.points)
                if (g.box.contains(p, eps))
                    raw.push_back({p, static_cast<int>(i), static_cast<int>(j)});
        }
    }
    g.nodes = cluster_intersections(std::move(raw), eps);

    // A clustered node may sit on further curves that were not part of its
    // generating intersections (concurrency within tolerance).
    for (auto& node : g.nodes) {
        for (const auto& c : g.curves) {
            if (c.distance_to(node.coords) <= eps && !std::binary_search(node.curves.begin(),
                                                                         node.curves.end(), c.id))
                node.curves.insert(std::lower_bound(node.curves.begin(), node.curves.end(), c.id),
                                   c.id);
        }
    }

    std::vector<std::vector<int>> on_curve(g.curves.size());
    for (std::size_t n = 0; n < g.nodes.size(); ++n)
        for (int c : g.nodes[n].curves) on_curve[c].push_back(static_cast<int>(n));

    GraphBuilder builder(g, eps);
    for (const auto& c : g.curves) {
        if (c.is_line()) {
            builder.build_line(c, on_curve[c.id]);
        } else {
            builder.build_circle(c, on_curve[c.id]);
        }
    }

    int components = 0;
    connected_components(g, &components);
    g.disconnected_coverage = g.intersection_count() == 0 || components > 1;
    return g;
}

Coverage pair_coverage(const ScenicGraph& g, std::span<const int> edge_ids) {
    Coverage cov;
    for (int e : edge_ids) {
        if (e < 0 || static_cast<std::size_t>(e) >= g.edges.size())
            throw DataError("edge id " + std::to_string(e) + " is not in the graph");
        const auto& pairs = g.edges[e].pairs;
        cov.pairs.insert(cov.pairs.end(), pairs.begin(), pairs.end());
    }
    std::sort(cov.pairs.begin(), cov.pairs.end());
    cov.pairs.erase(std::unique(cov.pairs.begin(), cov.pairs.end()), cov.pairs.end());
    if (!g.all_pairs.empty())
        cov.completeness =
            static_cast<double>(cov.pairs.size()) / static_cast<double>(g.all_pairs.size());
    return cov;
}

std::vector<int> connected_components(const ScenicGraph& g, int* count) {
    UnionFind uf(g.nodes.size());
    for (const auto& e : g.edges)
        if (!e.is_loop()) uf.unite(e.u, e.v);
    std::vector<int> label(g.nodes.size(), -1);
    std::vector<int> root_label(g.nodes.size(), -1);
    int next = 0;
    for (std::size_t n = 0; n < g.nodes.size(); ++n) {
        const std::size_t r = uf.find(n);
        if (root_label[r] < 0) root_label[r] = next++;
        label[n] = root_label[r];
    }
    if (count) *count = next;
    return label;
}

}  // namespace scenic
