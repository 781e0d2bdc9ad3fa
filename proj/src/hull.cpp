#include <algorithm>
#include <cmath>
#include <map>

#include "scenic/geometry.hpp"

namespace scenic::geo {

namespace {

// Orientation of c relative to the directed line a->b, with near-zero values
// (relative to the operand magnitudes) reported as exactly collinear.
double orient(Point2 a, Point2 b, Point2 c) {
    const Point2 u = b - a;
    const Point2 v = c - a;
    const double o = cross(u, v);
    if (std::abs(o) <= 1e-14 * norm(u) * norm(v)) return 0.0;
    return o;
}

// Indices of the first occurrence of each distinct point.
std::vector<std::size_t> unique_indices(std::span<const Point2> pts) {
    std::map<std::pair<double, double>, std::size_t> seen;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (seen.emplace(std::pair{pts[i].x, pts[i].y}, i).second) out.push_back(i);
    }
    return out;
}

}  // namespace

std::vector<std::size_t> convex_hull_indices(std::span<const Point2> pts) {
    const std::vector<std::size_t> ids = unique_indices(pts);
    if (ids.size() <= 1) return ids;

    const std::size_t start = *std::min_element(
        ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });

    std::vector<std::size_t> hull;
    std::size_t current = start;
    do {
        hull.push_back(current);
        std::size_t candidate = current == ids.front() ? ids[1] : ids.front();
        for (std::size_t q : ids) {
            if (q == current) continue;
            const double o = orient(pts[current], pts[candidate], pts[q]);
            if (o < 0.0 || (o == 0.0 && distance(pts[current], pts[q]) >
                                            distance(pts[current], pts[candidate]))) {
                candidate = q;
            }
        }
        current = candidate;
    } while (current != start && hull.size() <= ids.size());
    return hull;
}

std::vector<Point2> convex_hull(std::span<const Point2> pts) {
    std::vector<Point2> out;
    for (std::size_t i : convex_hull_indices(pts)) out.push_back(pts[i]);
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> alpha_shape(std::span<const Point2> pts,
                                                              double alpha) {
    using Edge = std::pair<std::size_t, std::size_t>;
    auto ordered = [](std::size_t a, std::size_t b) { return a < b ? Edge{a, b} : Edge{b, a}; };

    const std::vector<std::size_t> hull = convex_hull_indices(pts);
    std::vector<Edge> edges;
    if (hull.size() < 3) {
        if (hull.size() == 2) edges.push_back(ordered(hull[0], hull[1]));
        return edges;
    }

    const std::vector<std::size_t> ids = unique_indices(pts);
    const double radius = 1.0 / alpha;
    for (std::size_t a = 0; a < ids.size(); ++a) {
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
            const Point2 p = pts[ids[a]];
            const Point2 q = pts[ids[b]];
            const double d = distance(p, q);
            if (d > 2.0 * radius) continue;
            const Point2 mid = 0.5 * (p + q);
            const Point2 n = Point2{-(q - p).y, (q - p).x} / d;
            // Distance from mid to either disc center along n.
            const double h = std::sqrt(std::max(0.0, radius * radius - 0.25 * d * d));

            // A point s lies strictly inside the disc centered mid + side*h*n iff
            // side*n.(s-mid) > (|s-mid|^2 - d^2/4) / (2h); this form stays
            // well-conditioned as the radius grows without bound.
            bool empty_side[2] = {true, true};
            for (std::size_t c : ids) {
                if (c == ids[a] || c == ids[b]) continue;
                const Point2 s = pts[c] - mid;
                const double slack = 1e-12 * std::max({1.0, d, norm(s)});
                const double power = dot(s, s) - 0.25 * d * d;
                for (int side = 0; side < 2; ++side) {
                    if (!empty_side[side]) continue;
                    const double sign = side == 0 ? 1.0 : -1.0;
                    const bool inside = h > 0.0 ? sign * dot(n, s) - power / (2.0 * h) > slack
                                                : power < -slack;
                    if (inside) empty_side[side] = false;
                }
                if (!empty_side[0] && !empty_side[1]) break;
            }
            if (empty_side[0] || empty_side[1]) edges.push_back(ordered(ids[a], ids[b]));
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

}  // namespace scenic::geo
