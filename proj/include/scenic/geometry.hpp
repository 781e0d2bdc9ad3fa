#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace scenic::geo {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
    friend constexpr Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
    friend constexpr Point2 operator/(Point2 p, double s) { return {p.x / s, p.y / s}; }
    friend constexpr bool operator==(Point2, Point2) = default;
    // Lexicographic (x, then y).
    friend constexpr auto operator<=>(Point2 a, Point2 b) {
        if (auto c = a.x <=> b.x; c != 0) return c;
        return a.y <=> b.y;
    }
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Scale-aware comparison tolerance. `scale` is the diagonal of the working
// bounding box; comparisons use eps_abs * max(1, scale).
struct Tolerance {
    double eps_abs = 1e-9;
    double scale = 1.0;

    double effective() const { return eps_abs * std::max(1.0, scale); }
};

// Infinite line. Canonical form: unit direction whose first nonzero
// component is positive, anchor at the foot of the perpendicular from the
// origin. Construct through make_line() to get the canonical form.
struct LineCurve {
    Point2 anchor;
    Point2 direction{1.0, 0.0};

    Point2 point_at(double t) const { return anchor + t * direction; }
    double parameter_of(Point2 p) const { return dot(p - anchor, direction); }
    double distance_to(Point2 p) const { return std::abs(cross(direction, p - anchor)); }
};

LineCurve make_line(Point2 through, Point2 direction);

struct CircleCurve {
    Point2 center;
    double radius = 1.0;

    Point2 point_at(double angle) const {
        return center + radius * Point2{std::cos(angle), std::sin(angle)};
    }
    double angle_of(Point2 p) const;
    double distance_to(Point2 p) const { return std::abs(distance(p, center) - radius); }
};

// Counterclockwise arc starting at start_angle in [0, 2pi), sweeping
// sweep in (0, 2pi].
struct Arc {
    CircleCurve circle;
    double start_angle = 0.0;
    double sweep = kTwoPi;

    double end_angle() const { return start_angle + sweep; }
    Point2 start() const { return circle.point_at(start_angle); }
    Point2 end() const { return circle.point_at(end_angle()); }
    Point2 point_at_fraction(double f) const { return circle.point_at(start_angle + f * sweep); }
};

double normalize_angle(double a);
double arc_length(const Arc& arc);

enum class IntersectionKind {
    Disjoint,    // no common point (includes parallel lines, concentric circles)
    Crossing,    // transversal intersection(s)
    Tangent,     // exactly one touching point
    Coincident,  // same curve within tolerance
};

struct CurveIntersection {
    IntersectionKind kind = IntersectionKind::Disjoint;
    std::vector<Point2> points;
};

CurveIntersection intersect_lines(const LineCurve& a, const LineCurve& b, const Tolerance& tol);
CurveIntersection intersect_line_circle(const LineCurve& l, const CircleCurve& c,
                                        const Tolerance& tol);
CurveIntersection intersect_circles(const CircleCurve& a, const CircleCurve& b,
                                    const Tolerance& tol);

bool same_line(const LineCurve& a, const LineCurve& b, const Tolerance& tol);
bool same_circle(const CircleCurve& a, const CircleCurve& b, const Tolerance& tol);

/// Gift-wrapping convex hull. Returns indices into `pts` of the hull
/// vertices in counterclockwise order, starting at the lexicographically
/// smallest vertex. Collinear boundary points are dropped; duplicate input
/// points collapse onto their first occurrence.
std::vector<std::size_t> convex_hull_indices(std::span<const Point2> pts);
std::vector<Point2> convex_hull(std::span<const Point2> pts);

/// Boundary edges (i < j, sorted) of the alpha shape: (i, j) qualifies when
/// some disc of radius 1/alpha with p_i and p_j on its boundary holds no
/// other input point in its interior. Falls back to convex-hull edges when
/// fewer than three non-collinear points are given.
std::vector<std::pair<std::size_t, std::size_t>> alpha_shape(std::span<const Point2> pts,
                                                              double alpha);

// w1 * |p - b| - w2 * |p - r|; zero exactly on the scenic locus of (r, b).
double scenic_residual(Point2 p, Point2 r, Point2 b, double w1, double w2);

}  // namespace scenic::geo
