#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "scenic/geometry.hpp"

using namespace scenic::geo;

namespace {

const Tolerance kTol{1e-9, 10.0};

bool near(Point2 a, Point2 b, double eps = 1e-9) { return distance(a, b) <= eps; }

LineCurve vertical(double x) { return make_line({x, 0.0}, {0.0, 1.0}); }
LineCurve horizontal(double y) { return make_line({0.0, y}, {1.0, 0.0}); }

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("make_line canonical form") {
    const LineCurve a = make_line({1.0, 5.0}, {0.0, -3.0});
    const LineCurve b = make_line({1.0, -2.0}, {0.0, 2.0});
    CHECK(a.direction.y == doctest::Approx(1.0));
    CHECK(near(a.anchor, {1.0, 0.0}));
    CHECK(same_line(a, b, kTol));
    CHECK(std::abs(norm(make_line({0, 0}, {3, 4}).direction) - 1.0) <= 1e-12);
}

TEST_CASE("intersect_lines") {
    SUBCASE("vertical and diagonal") {
        const auto r = intersect_lines(vertical(1.0), make_line({0, 0}, {1, 1}), kTol);
        REQUIRE(r.kind == IntersectionKind::Crossing);
        REQUIRE(r.points.size() == 1);
        CHECK(near(r.points[0], {1.0, 1.0}));
    }
    SUBCASE("parallel") {
        const auto r = intersect_lines(vertical(1.0), vertical(2.0), kTol);
        CHECK(r.kind == IntersectionKind::Disjoint);
        CHECK(r.points.empty());
    }
    SUBCASE("coincident") {
        const auto r = intersect_lines(vertical(1.0), make_line({1.0, 7.0}, {0.0, 2.0}), kTol);
        CHECK(r.kind == IntersectionKind::Coincident);
        CHECK(r.points.empty());
    }
    SUBCASE("two bisectors meet at (2, 1)") {
        // bisector of (0,0)-(4,0) is x = 2; bisector of (0,0)-(0,2) is y = 1
        const auto r = intersect_lines(vertical(2.0), horizontal(1.0), kTol);
        REQUIRE(r.points.size() == 1);
        CHECK(near(r.points[0], {2.0, 1.0}));
        CHECK(std::abs(oracle::residual(r.points[0], {0, 0}, {4, 0}, 1, 1)) <= 1e-12);
        CHECK(std::abs(oracle::residual(r.points[0], {0, 0}, {0, 2}, 1, 1)) <= 1e-12);
    }
}

TEST_CASE("intersect_line_circle") {
    const CircleCurve unit{{0.0, 0.0}, 1.0};
    SUBCASE("secant") {
        const auto r = intersect_line_circle(vertical(0.0), unit, kTol);
        REQUIRE(r.points.size() == 2);
        CHECK(near(r.points[0], {0.0, -1.0}));
        CHECK(near(r.points[1], {0.0, 1.0}));
    }
    SUBCASE("tangent") {
        const auto r = intersect_line_circle(vertical(1.0), unit, kTol);
        CHECK(r.kind == IntersectionKind::Tangent);
        REQUIRE(r.points.size() == 1);
        CHECK(near(r.points[0], {1.0, 0.0}));
    }
    SUBCASE("disjoint") {
        const auto r = intersect_line_circle(vertical(3.0), unit, kTol);
        CHECK(r.kind == IntersectionKind::Disjoint);
        CHECK(r.points.empty());
    }
}

TEST_CASE("intersect_circles") {
    SUBCASE("two points") {
        const auto r = intersect_circles({{0, 0}, 1.0}, {{1, 0}, 1.0}, kTol);
        REQUIRE(r.points.size() == 2);
        CHECK(near(r.points[0], {0.5, -std::sqrt(3.0) / 2.0}));
        CHECK(near(r.points[1], {0.5, std::sqrt(3.0) / 2.0}));
    }
    SUBCASE("external tangency") {
        const auto r = intersect_circles({{0, 0}, 1.0}, {{2, 0}, 1.0}, kTol);
        CHECK(r.kind == IntersectionKind::Tangent);
        REQUIRE(r.points.size() == 1);
        CHECK(near(r.points[0], {1.0, 0.0}));
    }
    SUBCASE("internal tangency") {
        const auto r = intersect_circles({{0, 0}, 2.0}, {{1, 0}, 1.0}, kTol);
        REQUIRE(r.points.size() == 1);
        CHECK(near(r.points[0], {2.0, 0.0}));
    }
    SUBCASE("concentric") {
        const auto r = intersect_circles({{0, 0}, 1.0}, {{0, 0}, 2.0}, kTol);
        CHECK(r.kind == IntersectionKind::Disjoint);
    }
    SUBCASE("coincident") {
        const auto r = intersect_circles({{1, 1}, 2.0}, {{1, 1}, 2.0}, kTol);
        CHECK(r.kind == IntersectionKind::Coincident);
        CHECK(r.points.empty());
    }
}

TEST_CASE("intersections lie on both curves and ignore argument order") {
    oracle::Gen gen(11);
    for (int trial = 0; trial < 300; ++trial) {
        const LineCurve l1 = make_line(gen.point(-5, 5), gen.in_disc(1.0) + Point2{0.01, 0.0});
        const LineCurve l2 = make_line(gen.point(-5, 5), gen.in_disc(1.0) + Point2{0.0, 0.01});
        const CircleCurve c1{gen.point(-3, 3), gen.uniform(0.5, 4)};
        const CircleCurve c2{gen.point(-3, 3), gen.uniform(0.5, 4)};

        auto on_both = [&](const CurveIntersection& r, auto da, auto db) {
            for (Point2 p : r.points) {
                CHECK(da(p) <= kTol.effective());
                CHECK(db(p) <= kTol.effective());
            }
        };
        auto same_points = [](const CurveIntersection& a, const CurveIntersection& b) {
            REQUIRE(a.points.size() == b.points.size());
            for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(near(a.points[i], b.points[i], 1e-9));
        };
        const auto ll = intersect_lines(l1, l2, kTol);
        on_both(ll, [&](Point2 p) { return l1.distance_to(p); }, [&](Point2 p) { return l2.distance_to(p); });
        same_points(ll, intersect_lines(l2, l1, kTol));

        const auto lc = intersect_line_circle(l1, c1, kTol);
        on_both(lc, [&](Point2 p) { return l1.distance_to(p); }, [&](Point2 p) { return c1.distance_to(p); });

        const auto cc = intersect_circles(c1, c2, kTol);
        on_both(cc, [&](Point2 p) { return c1.distance_to(p); }, [&](Point2 p) { return c2.distance_to(p); });
        same_points(cc, intersect_circles(c2, c1, kTol));
    }
}

TEST_CASE("arc_length") {
    CHECK(arc_length({{{0, 0}, 2.0}, 0.0, std::numbers::pi}) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
    CHECK(arc_length({{{0, 0}, 1.0}, 0.0, kTwoPi}) == doctest::Approx(kTwoPi).epsilon(1e-12));
    const Arc arc{{{1, -1}, 3.0}, 0.4, 0.7};
    CHECK(arc_length(arc) == doctest::Approx(2.1).epsilon(1e-12));
    const double poly = oracle::polyline_arc_length({1, -1}, 3.0, 0.4, 0.7, 1000000);
    CHECK(std::abs(poly - arc_length(arc)) / arc_length(arc) <= 1e-6);
}

TEST_CASE("arc_length is additive") {
    oracle::Gen gen(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Arc arc{{gen.point(-5, 5), gen.uniform(0.1, 10)}, normalize_angle(gen.uniform(0, 7)),
                      gen.uniform(0.01, kTwoPi)};
        const double split = gen.uniform(0.01, 0.99) * arc.sweep;
        const Arc left{arc.circle, arc.start_angle, split};
        const Arc right{arc.circle, normalize_angle(arc.start_angle + split), arc.sweep - split};
        CHECK(std::abs(arc_length(left) + arc_length(right) - arc_length(arc)) <= 1e-12 * arc_length(arc));
    }
}

TEST_CASE("normalize_angle") {
    CHECK(normalize_angle(-std::numbers::pi / 2) == doctest::Approx(1.5 * std::numbers::pi));
    CHECK(normalize_angle(kTwoPi) == doctest::Approx(0.0));
    CHECK(normalize_angle(7.0) == doctest::Approx(7.0 - kTwoPi));
}

TEST_CASE("convex_hull fixtures") {
    SUBCASE("interior point dropped") {
        const std::vector<Point2> pts{{0, 0}, {1, 0}, {0, 1}, {0.1, 0.1}};
        const auto hull = convex_hull(pts);
        REQUIRE(hull.size() == 3);
        CHECK(hull[0] == Point2{0, 0});
        CHECK(hull[1] == Point2{1, 0});
        CHECK(hull[2] == Point2{0, 1});
    }
    SUBCASE("square with center") {
        const std::vector<Point2> pts{{1, 1}, {0, 1}, {0.5, 0.5}, {0, 0}, {1, 0}};
        const auto hull = convex_hull(pts);
        REQUIRE(hull.size() == 4);
        CHECK(hull[0] == Point2{0, 0});
        CHECK(hull[1] == Point2{1, 0});
        CHECK(hull[2] == Point2{1, 1});
        CHECK(hull[3] == Point2{0, 1});
    }
    SUBCASE("collinear boundary points excluded") {
        const std::vector<Point2> pts{{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}, {0, 1}};
        CHECK(convex_hull(pts).size() == 4);
    }
    SUBCASE("all coincident") {
        const std::vector<Point2> pts{{3, 3}, {3, 3}, {3, 3}};
        const auto ids = convex_hull_indices(pts);
        REQUIRE(ids.size() == 1);
        CHECK(ids[0] == 0);
    }
    SUBCASE("all collinear") {
        const std::vector<Point2> pts{{2, 2}, {0, 0}, {1, 1}, {3, 3}};
        const auto hull = convex_hull(pts);
        REQUIRE(hull.size() == 2);
        CHECK(hull[0] == Point2{0, 0});
        CHECK(hull[1] == Point2{3, 3});
    }
}

TEST_CASE("convex_hull matches the all-pairs edge oracle") {
    oracle::Gen gen(2024);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Point2> pts;
        const int n = trial < 10 ? 100 : gen.integer(1, 50);
        for (int i = 0; i < n; ++i) pts.push_back(gen.in_disc(10.0));
        CHECK(convex_hull(pts) == oracle::brute_hull(pts));
    }
    // Points on a small integer grid give many exact collinear ties.
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Point2> pts;
        for (int i = 0; i < 30; ++i) pts.push_back({double(gen.integer(0, 5)), double(gen.integer(0, 5))});
        CHECK(convex_hull(pts) == oracle::brute_hull(pts));
    }
}

TEST_CASE("alpha_shape fixtures") {
    const std::vector<Point2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    using E = std::pair<std::size_t, std::size_t>;
    SUBCASE("small alpha gives the hull edges") {
        const std::vector<E> expected{{0, 1}, {0, 3}, {1, 2}, {2, 3}};
        CHECK(alpha_shape(square, 1e-6) == expected);
    }
    SUBCASE("far outlier joins the hull") {
        std::vector<Point2> pts = square;
        pts.push_back({10, 10});
        const auto edges = alpha_shape(pts, 1e-6);
        const std::vector<E> expected{{0, 1}, {0, 3}, {1, 4}, {3, 4}};
        CHECK(edges == expected);
    }
    SUBCASE("two points") {
        const std::vector<Point2> pts{{0, 0}, {1, 0}};
        CHECK(alpha_shape(pts, 5.0) == std::vector<E>{{0, 1}});
    }
    SUBCASE("C shape exposes its concave side") {
        std::vector<Point2> pts;
        for (int i = 0; i <= 8; ++i) {
            const double a = std::numbers::pi / 2 + std::numbers::pi * i / 8.0;
            pts.push_back({4.0 * std::cos(a), 4.0 * std::sin(a)});
            pts.push_back({3.0 * std::cos(a), 3.0 * std::sin(a)});
        }
        const double alpha = 1.0 / 1.2;
        const auto edges = alpha_shape(pts, alpha);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                const bool in = std::binary_search(edges.begin(), edges.end(), E{i, j});
                CHECK(in == oracle::empty_disc_edge(pts, i, j, alpha));
            }
        // The inner arc (concave side) is on the boundary; the hull chord is not.
        CHECK(std::binary_search(edges.begin(), edges.end(), E{1, 3}));
        CHECK_FALSE(std::binary_search(edges.begin(), edges.end(), E{0, 16}));
    }
}

TEST_CASE("alpha_shape matches the empty-disc oracle on random clouds") {
    oracle::Gen gen(77);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Point2> pts;
        for (int i = 0; i < 25; ++i) pts.push_back(gen.point(0, 10));
        const double alpha = 1.0 / gen.uniform(0.8, 6.0);
        const auto edges = alpha_shape(pts, alpha);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                double margin = 0.0;
                const bool expected = oracle::empty_disc_edge(pts, i, j, alpha, &margin);
                if (margin < 1e-9) continue;  // too close to call
                ++checked;
                CHECK(std::binary_search(edges.begin(), edges.end(), std::pair{i, j}) == expected);
            }
    }
    CHECK(checked > 1000);
}

TEST_CASE("alpha_shape equals hull edges below the critical alpha") {
    oracle::Gen gen(8);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Point2> pts;
        for (int i = 0; i < 20; ++i) pts.push_back(gen.in_disc(5.0));
        const auto hull = convex_hull_indices(pts);
        std::vector<std::pair<std::size_t, std::size_t>> expected;
        for (std::size_t k = 0; k < hull.size(); ++k) {
            const std::size_t a = hull[k];
            const std::size_t b = hull[(k + 1) % hull.size()];
            expected.push_back({std::min(a, b), std::max(a, b)});
        }
        std::sort(expected.begin(), expected.end());
        CHECK(alpha_shape(pts, 1e-9) == expected);
    }
}

TEST_CASE("scenic_residual") {
    CHECK(scenic_residual({1, 0.7}, {0, 0}, {2, 0}, 1, 1) == doctest::Approx(0.0));
    CHECK(scenic_residual({2, 0}, {0, 0}, {3, 0}, 2, 1) == doctest::Approx(0.0));
    CHECK(scenic_residual({0, 0}, {0, 0}, {1, 0}, 1, 1) == doctest::Approx(1.0));
    oracle::Gen gen(3);
    for (int i = 0; i < 100; ++i) {
        const Point2 r = gen.point(-5, 5);
        const Point2 b = gen.point(-5, 5);
        const Point2 p = gen.point(-5, 5);
        const double w = gen.uniform(0.5, 3);
        CHECK(scenic_residual(p, r, b, w, w) == doctest::Approx(w * (distance(p, b) - distance(p, r))));
    }
}

}  // TEST_SUITE
