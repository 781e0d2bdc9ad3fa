#include "scenic/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace scenic::geo {

namespace {

// Directions with |x| below this are treated as vertical when choosing the
// canonical sign.
constexpr double kAxisEps = 1e-12;

}  // namespace

LineCurve make_line(Point2 through, Point2 direction) {
    const double len = norm(direction);
    Point2 d = direction / len;
    if (d.x < -kAxisEps || (std::abs(d.x) <= kAxisEps && d.y < 0.0)) d = -1.0 * d;
    return LineCurve{through - dot(through, d) * d, d};
}

double CircleCurve::angle_of(Point2 p) const {
    return normalize_angle(std::atan2(p.y - center.y, p.x - center.x));
}

double normalize_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double arc_length(const Arc& arc) { return arc.circle.radius * arc.sweep; }

bool same_line(const LineCurve& a, const LineCurve& b, const Tolerance& tol) {
    return std::abs(cross(a.direction, b.direction)) <= tol.eps_abs &&
           a.distance_to(b.anchor) <= tol.effective() && b.distance_to(a.anchor) <= tol.effective();
}

bool same_circle(const CircleCurve& a, const CircleCurve& b, const Tolerance& tol) {
    return distance(a.center, b.center) <= tol.effective() &&
           std::abs(a.radius - b.radius) <= tol.effective();
}

CurveIntersection intersect_lines(const LineCurve& a, const LineCurve& b, const Tolerance& tol) {
    const double denom = cross(a.direction, b.direction);
    if (std::abs(denom) <= tol.eps_abs) {
        if (a.distance_to(b.anchor) <= tol.effective()) return {IntersectionKind::Coincident, {}};
        return {};
    }
    const double t = cross(b.anchor - a.anchor, b.direction) / denom;
    return {IntersectionKind::Crossing, {a.point_at(t)}};
}

CurveIntersection intersect_line_circle(const LineCurve& l, const CircleCurve& c,
                                        const Tolerance& tol) {
    const double eps = tol.effective();
    const Point2 foot = l.point_at(l.parameter_of(c.center));
    const double h = l.distance_to(c.center);
    const double half_chord_sq = c.radius * c.radius - h * h;
    if (half_chord_sq > eps * eps) {
        const double s = std::sqrt(half_chord_sq);
        Point2 p = foot - s * l.direction;
        Point2 q = foot + s * l.direction;
        if (q < p) std::swap(p, q);
        return {IntersectionKind::Crossing, {p, q}};
    }
    if (h - c.radius <= eps) return {IntersectionKind::Tangent, {foot}};
    return {};
}

CurveIntersection intersect_circles(const CircleCurve& a, const CircleCurve& b,
                                    const Tolerance& tol) {
    const double eps = tol.effective();
    const double d = distance(a.center, b.center);
    if (d <= eps) {
        if (std::abs(a.radius - b.radius) <= eps) return {IntersectionKind::Coincident, {}};
        return {};
    }
    const Point2 u = (b.center - a.center) / d;
    // Signed distance from a.center to the radical line along u.
    const double x = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    const double h_sq = a.radius * a.radius - x * x;
    const Point2 base = a.center + x * u;
    if (h_sq > eps * eps) {
        const double h = std::sqrt(h_sq);
        const Point2 perp{-u.y, u.x};
        Point2 p = base - h * perp;
        Point2 q = base + h * perp;
        if (q < p) std::swap(p, q);
        return {IntersectionKind::Crossing, {p, q}};
    }
    const double gap = std::max(d - (a.radius + b.radius), std::abs(a.radius - b.radius) - d);
    if (gap <= eps) return {IntersectionKind::Tangent, {base}};
    return {};
}

double scenic_residual(Point2 p, Point2 r, Point2 b, double w1, double w2) {
    return w1 * distance(p, b) - w2 * distance(p, r);
}

}  // namespace scenic::geo
