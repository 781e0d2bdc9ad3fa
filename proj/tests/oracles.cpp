#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace oracle {

using scenic::Color;
using scenic::ColoredPoint;

Point2 Gen::in_disc(double radius) {
    for (;;) {
        const Point2 p = point(-radius, radius);
        if (std::hypot(p.x, p.y) <= radius) return p;
    }
}

Eigen::VectorXd Gen::vector(int d, double lo, double hi) {
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v[i] = uniform(lo, hi);
    return v;
}

scenic::Config Gen::config(int max_red, int max_blue, bool weighted, double spacing) {
    scenic::Config cfg;
    const int reds = integer(1, max_red);
    const int blues = integer(1, max_blue);
    auto far_enough = [&](Point2 p) {
        return std::all_of(cfg.points.begin(), cfg.points.end(), [&](const ColoredPoint& q) {
            return std::hypot(p.x - q.coords.x, p.y - q.coords.y) >= spacing;
        });
    };
    for (int i = 0; i < reds + blues; ++i) {
        Point2 p = point(0.0, 10.0);
        while (!far_enough(p)) p = point(0.0, 10.0);
        const double w = weighted ? uniform(0.5, 3.0) : 1.0;
        cfg.points.push_back({i < reds ? i : 100 + i, p, i < reds ? Color::Red : Color::Blue, w});
    }
    return cfg;
}

std::vector<scenic::lattice::ColoredPointD> Gen::points_d(int d, int max_red, int max_blue) {
    std::vector<scenic::lattice::ColoredPointD> pts;
    const int reds = integer(1, max_red);
    const int blues = integer(1, max_blue);
    for (int i = 0; i < reds + blues; ++i)
        pts.push_back({i, vector(d, -5.0, 5.0), i < reds ? Color::Red : Color::Blue});
    return pts;
}

namespace {

double orient(Point2 a, Point2 b, Point2 c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

}  // namespace

std::vector<Point2> brute_hull(const std::vector<Point2>& input) {
    std::vector<Point2> pts = input;
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;

    // next[i] = j when i->j has every other point strictly on its left.
    std::vector<int> next(pts.size(), -1);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            bool ok = true;
            for (std::size_t k = 0; k < pts.size() && ok; ++k) {
                if (k == i || k == j) continue;
                const double o = orient(pts[i], pts[j], pts[k]);
                if (o < 0.0) ok = false;
                // Collinear: k must lie strictly between i and j.
                if (o == 0.0) {
                    const double t = (pts[k].x - pts[i].x) * (pts[j].x - pts[i].x) +
                                     (pts[k].y - pts[i].y) * (pts[j].y - pts[i].y);
                    const double len2 = (pts[j].x - pts[i].x) * (pts[j].x - pts[i].x) +
                                        (pts[j].y - pts[i].y) * (pts[j].y - pts[i].y);
                    if (t <= 0.0 || t >= len2) ok = false;
                }
            }
            if (ok) next[i] = static_cast<int>(j);
        }
    std::vector<Point2> hull;
    if (next[0] < 0) {
        // Everything collinear: the two extremes.
        hull = {pts.front(), pts.back()};
        return hull;
    }
    int cur = 0;
    do {
        hull.push_back(pts[cur]);
        cur = next[cur];
    } while (cur != 0 && cur >= 0 && hull.size() <= pts.size());
    return hull;
}

bool empty_disc_edge(const std::vector<Point2>& pts, std::size_t i, std::size_t j, double alpha,
                     double* margin) {
    const double radius = 1.0 / alpha;
    const Point2 a = pts[i];
    const Point2 b = pts[j];
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double d = std::hypot(dx, dy);
    if (margin) *margin = std::numeric_limits<double>::infinity();
    if (d > 2.0 * radius || d == 0.0) return false;
    const double h = std::sqrt(std::max(0.0, radius * radius - 0.25 * d * d));
    const Point2 mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
    const Point2 normal{-dy / d, dx / d};
    bool any_empty = false;
    for (double side : {1.0, -1.0}) {
        const Point2 c{mid.x + side * h * normal.x, mid.y + side * h * normal.y};
        bool empty = true;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            if (k == i || k == j) continue;
            const double dist = std::hypot(pts[k].x - c.x, pts[k].y - c.y);
            if (margin) *margin = std::min(*margin, std::abs(dist - radius));
            if (dist < radius) empty = false;
        }
        any_empty = any_empty || empty;
    }
    return any_empty;
}

std::vector<double> dijkstra(const scenic::ScenicGraph& g, int source) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<std::pair<int, double>>> adj(g.nodes.size());
    for (const auto& e : g.edges) {
        if (e.u == e.v) continue;
        adj[e.u].push_back({e.v, e.length});
        adj[e.v].push_back({e.u, e.length});
    }
    std::vector<double> dist(g.nodes.size(), inf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        for (const auto& [w, len] : adj[v])
            if (d + len < dist[w]) {
                dist[w] = d + len;
                heap.push({dist[w], w});
            }
    }
    return dist;
}

double polyline_arc_length(Point2 center, double radius, double start, double sweep, int segments) {
    double total = 0.0;
    Point2 prev{center.x + radius * std::cos(start), center.y + radius * std::sin(start)};
    for (int i = 1; i <= segments; ++i) {
        const double a = start + sweep * i / segments;
        const Point2 p{center.x + radius * std::cos(a), center.y + radius * std::sin(a)};
        total += std::hypot(p.x - prev.x, p.y - prev.y);
        prev = p;
    }
    return total;
}

double residual(Point2 p, Point2 r, Point2 b, double wr, double wb) {
    return wr * std::hypot(p.x - b.x, p.y - b.y) - wb * std::hypot(p.x - r.x, p.y - r.y);
}

int rank(Eigen::MatrixXd m, double tol) {
    int r = 0;
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = r;
        for (int i = r + 1; i < rows; ++i)
            if (std::abs(m(i, c)) > std::abs(m(pivot, c))) pivot = i;
        if (std::abs(m(pivot, c)) <= tol) continue;
        m.row(r).swap(m.row(pivot));
        for (int i = r + 1; i < rows; ++i) m.row(i) -= (m(i, c) / m(r, c)) * m.row(r);
        ++r;
    }
    return r;
}

std::pair<Eigen::VectorXd, double> bisector_normal(const Eigen::VectorXd& r, const Eigen::VectorXd& b) {
    const Eigen::VectorXd diff = b - r;
    const double len = diff.norm();
    return {diff / len, (b.squaredNorm() - r.squaredNorm()) / (2.0 * len)};
}

namespace {

// a |p|^2 + d . p + f = 0
struct Conic {
    double a;
    Point2 d;
    double f;
};

Conic locus(const ColoredPoint& r, const ColoredPoint& b) {
    const double wr2 = r.weight * r.weight;
    const double wb2 = b.weight * b.weight;
    // wr^2 |p - b|^2 - wb^2 |p - r|^2 = 0
    Conic c{wr2 - wb2,
            {-2.0 * (wr2 * b.coords.x - wb2 * r.coords.x), -2.0 * (wr2 * b.coords.y - wb2 * r.coords.y)},
            wr2 * (b.coords.x * b.coords.x + b.coords.y * b.coords.y) -
                wb2 * (r.coords.x * r.coords.x + r.coords.y * r.coords.y)};
    if (std::abs(r.weight - b.weight) <= 1e-9 * std::max(r.weight, b.weight)) c.a = 0.0;
    if (c.a != 0.0) {
        c.d = {c.d.x / c.a, c.d.y / c.a};
        c.f /= c.a;
        c.a = 1.0;
    }
    return c;
}

// Line n . p + k = 0 against |p|^2 + d . p + f = 0.
std::vector<Point2> line_vs_circle(Point2 n, double k, Point2 d, double f) {
    const double nn = n.x * n.x + n.y * n.y;
    const Point2 p0{-k * n.x / nn, -k * n.y / nn};
    const Point2 u{-n.y / std::sqrt(nn), n.x / std::sqrt(nn)};
    // |p0 + t u|^2 + d.(p0 + t u) + f = 0
    const double bq = 2.0 * (p0.x * u.x + p0.y * u.y) + d.x * u.x + d.y * u.y;
    const double cq = p0.x * p0.x + p0.y * p0.y + d.x * p0.x + d.y * p0.y + f;
    const double disc = bq * bq - 4.0 * cq;
    if (disc < 0.0) return {};
    const double s = std::sqrt(disc);
    std::vector<Point2> out;
    for (double t : {(-bq - s) / 2.0, (-bq + s) / 2.0}) out.push_back({p0.x + t * u.x, p0.y + t * u.y});
    if (s == 0.0) out.pop_back();
    return out;
}

}  // namespace

std::vector<Point2> pairwise_intersections(const scenic::Config& cfg, const scenic::Box& box, double merge) {
    std::vector<Conic> loci;
    for (const auto& r : cfg.points) {
        if (r.color != Color::Red) continue;
        for (const auto& b : cfg.points)
            if (b.color == Color::Blue) loci.push_back(locus(r, b));
    }
    std::vector<Point2> raw;
    for (std::size_t i = 0; i < loci.size(); ++i)
        for (std::size_t j = i + 1; j < loci.size(); ++j) {
            const Conic& p = loci[i];
            const Conic& q = loci[j];
            std::vector<Point2> pts;
            if (p.a == 0.0 && q.a == 0.0) {
                const double det = p.d.x * q.d.y - p.d.y * q.d.x;
                if (std::abs(det) > 1e-12 * std::hypot(p.d.x, p.d.y) * std::hypot(q.d.x, q.d.y))
                    pts.push_back({(-p.f * q.d.y + q.f * p.d.y) / det, (-p.d.x * q.f + q.d.x * p.f) / det});
            } else if (p.a == 0.0) {
                pts = line_vs_circle(p.d, p.f, q.d, q.f);
            } else if (q.a == 0.0) {
                pts = line_vs_circle(q.d, q.f, p.d, p.f);
            } else {
                // Radical line of the two circles.
                const Point2 n{p.d.x - q.d.x, p.d.y - q.d.y};
                if (std::hypot(n.x, n.y) > 1e-12) pts = line_vs_circle(n, p.f - q.f, p.d, p.f);
            }
            for (Point2 x : pts)
                if (x.x >= box.xmin - merge && x.x <= box.xmax + merge && x.y >= box.ymin - merge &&
                    x.y <= box.ymax + merge)
                    raw.push_back(x);
        }

    std::vector<int> parent(raw.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int v) {
        while (parent[v] != v) v = parent[v];
        return v;
    };
    for (std::size_t i = 0; i < raw.size(); ++i)
        for (std::size_t j = i + 1; j < raw.size(); ++j)
            if (std::hypot(raw[i].x - raw[j].x, raw[i].y - raw[j].y) <= merge)
                parent[root(static_cast<int>(j))] = root(static_cast<int>(i));
    std::vector<Point2> out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (root(static_cast<int>(i)) != static_cast<int>(i)) continue;
        Point2 sum{0.0, 0.0};
        int n = 0;
        for (std::size_t j = 0; j < raw.size(); ++j)
            if (root(static_cast<int>(j)) == static_cast<int>(i)) {
                sum = {sum.x + raw[j].x, sum.y + raw[j].y};
                ++n;
            }
        out.push_back({sum.x / n, sum.y / n});
    }
    std::sort(out.begin(), out.end(), [](Point2 a, Point2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    return out;
}

}  // namespace oracle
