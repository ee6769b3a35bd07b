#include "doctest.h"
#include "support.hpp"

#include "normclust/geometry.hpp"

using namespace normclust;
using namespace normclust::testing;

namespace {

// O(n^3) hull check: every pair of hull-consecutive vertices has all points on its left.
bool brute_hull_valid(const PointSet& pts, const ConvexPolygon& hull) {
    const auto& h = hull.vertices;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const Point a = h[i], b = h[(i + 1) % h.size()];
        for (const auto& p : pts)
            if (orient(a, b, p) < -1e-9) return false;
    }
    // Vertices come from the input and turn strictly left.
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (std::find(pts.begin(), pts.end(), h[i]) == pts.end()) return false;
        if (orient(h[i], h[(i + 1) % h.size()], h[(i + 2) % h.size()]) <= 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("convex_hull examples") {
    auto tri = convex_hull({{0, 0}, {1, 0}, {0, 1}, {0.1, 0.1}});
    REQUIRE(tri.size() == 3);
    CHECK(polygon_area(tri) == doctest::Approx(0.5));
    CHECK(convex_hull({{2, 3}}).size() == 1);
    CHECK(convex_hull({{0, 0}, {1, 1}, {2, 2}, {0.5, 0.5}}).size() == 2);
    CHECK_THROWS_AS(convex_hull({}), Error);

    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        const auto pts = random_points(rng, 100);
        const auto hull = convex_hull(pts);
        CHECK(polygon_area(hull) > 0);
        CHECK(brute_hull_valid(pts, hull));
        // Every vertex is an input point and every non-vertex lies inside.
        for (const auto& p : pts) CHECK(polygon_contains(hull, p, 1e-9));
    }
}

TEST_CASE("diameter examples") {
    const PointSet square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    auto e = diameter(NormedPlane::euclidean(), square);
    CHECK(e.value == doctest::Approx(std::sqrt(2.0)));
    CHECK(NormedPlane::euclidean().dist(e.pair.first, e.pair.second) == doctest::Approx(std::sqrt(2.0)));
    CHECK(diameter(NormedPlane::l1(), square).value == doctest::Approx(2));
    CHECK(diameter(NormedPlane::euclidean(), {{4, 4}}).value == 0.0);
    CHECK_THROWS_AS(diameter(NormedPlane::euclidean(), {}), Error);
}

TEST_CASE("diameter matches all-pairs oracle on every norm") {
    Rng rng(5);
    for (const auto& [name, plane] : standard_norms()) {
        CAPTURE(name);
        for (int t = 0; t < 60; ++t) {
            const std::size_t n = 1 + rng() % 200;
            const auto pts = random_points(rng, n);
            double brute = 0.0;
            for (const auto& p : pts)
                for (const auto& q : pts) brute = std::max(brute, plane.gauge(p - q));
            CHECK(diameter(plane, pts).value == doctest::Approx(brute).epsilon(1e-9));
        }
    }
}

TEST_CASE("norm_perimeter") {
    const ConvexPolygon square{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    CHECK(norm_perimeter(NormedPlane::euclidean(), square) == doctest::Approx(4));
    CHECK(norm_perimeter(NormedPlane::l1(), square) == doctest::Approx(4));
    const ConvexPolygon seg{{{0, 0}, {3, 4}}};
    CHECK(norm_perimeter(NormedPlane::euclidean(), seg) == doctest::Approx(10));

    Rng rng(9);
    for (const auto& [name, plane] : standard_norms()) {
        const auto hull = convex_hull(random_points(rng, 15));
        ConvexPolygon moved = hull, reversed = hull;
        for (auto& v : moved.vertices) v += Vec{3.5, -1.25};
        std::reverse(reversed.vertices.begin(), reversed.vertices.end());
        CHECK(norm_perimeter(plane, moved) == doctest::Approx(norm_perimeter(plane, hull)));
        CHECK(norm_perimeter(plane, reversed) == doctest::Approx(norm_perimeter(plane, hull)));
    }
}

TEST_CASE("side_of and split_by_line") {
    const OrientedLine xaxis{{0, 0}, {1, 0}};
    CHECK(side_of(xaxis, {0, 1}) == Side::Left);
    CHECK(side_of(xaxis, {5, 0}) == Side::On);
    CHECK(side_of(xaxis, {0, -1}) == Side::Right);

    auto s = split_by_line({{0, 1}, {0, -1}}, xaxis, OnRule::ToLeft);
    CHECK(s.left == PointSet{{0, 1}});
    CHECK(s.right == PointSet{{0, -1}});
    CHECK(split_by_line({{2, 0}}, xaxis, OnRule::ToLeft).left.size() == 1);
    CHECK(split_by_line({{2, 0}}, xaxis, OnRule::ToRight).right.size() == 1);
    auto empty = split_by_line({}, xaxis, OnRule::ToLeft);
    CHECK(empty.left.empty());
    CHECK(empty.right.empty());
}

namespace {

// Independent O(m^2)-candidate search: lines through two endpoints, both
// directions, tested with a raw determinant.
bool any_stabbing_line(const std::vector<Segment>& segs) {
    PointSet ends;
    for (const auto& s : segs) {
        ends.push_back(s.a);
        ends.push_back(s.b);
    }
    auto meets = [](Point a, Point b, const Segment& s) {
        const double u = cross(b - a, s.a - a), v = cross(b - a, s.b - a);
        const double band = 1e-9 * std::max(1.0, euclid_norm(b - a)) * 20;
        return !((u > band && v > band) || (u < -band && v < -band));
    };
    for (std::size_t i = 0; i < ends.size(); ++i)
        for (std::size_t j = 0; j < ends.size(); ++j) {
            if (ends[i] == ends[j]) continue;
            bool ok = true;
            for (const auto& s : segs) ok = ok && meets(ends[i], ends[j], s);
            if (ok) return true;
        }
    for (const auto& e : ends)
        for (const auto& t : segs) {
            if (t.a == t.b) continue;
            bool ok = true;
            for (const auto& s : segs) ok = ok && meets(e, e + (t.b - t.a), s);
            if (ok) return true;
        }
    return false;
}

}  // namespace

TEST_CASE("stabbing_line examples") {
    std::vector<Segment> two{{{-1, 0}, {1, 0}}, {{-1, 1}, {1, 1}}};
    auto line = stabbing_line(two);
    REQUIRE(line);
    for (const auto& s : two) CHECK(line_meets_segment(*line, s));

    std::vector<Segment> three{{{0, 0}, {1, 0}}, {{3, 0}, {4, 0}}, {{0, 5}, {0, 6}}};
    auto l3 = stabbing_line(three);
    CHECK(l3.has_value() == any_stabbing_line(three));

    std::vector<Segment> one{{{2, 2}, {3, 5}}};
    auto l1 = stabbing_line(one);
    REQUIRE(l1);
    CHECK(line_meets_segment(*l1, one[0]));

    // Three segments around a triangle's vertices, pointing outward: no transversal.
    std::vector<Segment> none{{{0, 0}, {0.1, -0.1}}, {{10, 0}, {10.1, -0.1}}, {{5, 10}, {5, 10.2}},
                              {{5, 3}, {5.1, 3}}, {{1, 8}, {1.2, 8.1}}, {{9, 8}, {9.1, 8.2}}};
    CHECK(stabbing_line(none).has_value() == any_stabbing_line(none));
}

TEST_CASE("stabbing_line agrees with the candidate oracle on random sets") {
    Rng rng(21);
    int present = 0, absent = 0;
    for (int t = 0; t < 300; ++t) {
        std::vector<Segment> segs;
        const std::size_t m = 1 + rng() % 7;
        for (std::size_t i = 0; i < m; ++i) {
            const Point a{uniform(rng, -10, 10), uniform(rng, -10, 10)};
            segs.push_back({a, a + Vec{uniform(rng, -6, 6), uniform(rng, -6, 6)}});
        }
        const auto line = stabbing_line(segs);
        CHECK(line.has_value() == any_stabbing_line(segs));
        if (line) {
            ++present;
            for (const auto& s : segs) CHECK(line_meets_segment(*line, s));
        } else {
            ++absent;
        }
    }
    CHECK(present > 0);
    CHECK(absent > 0);
}

TEST_CASE("sorted_pairwise_distances") {
    const auto e = NormedPlane::euclidean();
    auto d = sorted_pairwise_distances(e, {{0, 0}, {1, 0}, {3, 0}});
    REQUIRE(d.size() == 3);
    CHECK(d[0].value == doctest::Approx(1));
    CHECK(d[1].value == doctest::Approx(2));
    CHECK(d[2].value == doctest::Approx(3));
    CHECK(sorted_pairwise_distances(e, {{0, 0}, {1, 1}}).size() == 1);
    CHECK_THROWS_AS(sorted_pairwise_distances(e, {{0, 0}}), Error);

    Rng rng(2);
    const auto pts = random_points(rng, 10);
    const auto sorted = sorted_pairwise_distances(NormedPlane::l1(), pts);
    CHECK(sorted.size() == 45);
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        const auto& [value, i, j] = sorted[k];
        CHECK(value == doctest::Approx(std::abs(pts[i].x - pts[j].x) + std::abs(pts[i].y - pts[j].y)));
        if (k) CHECK(sorted[k - 1].value <= value);
    }
}

TEST_CASE("separating_line") {
    auto l = separating_line({{0, 0}, {1, 0}}, {{0, 3}, {1, 3}});
    REQUIRE(l);
    CHECK(side_of(*l, {0, 0}) != Side::Right);
    CHECK(side_of(*l, {1, 3}) != Side::Left);
    CHECK_FALSE(separating_line({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}}).has_value());
    // Touching hulls are separable in the closed sense.
    CHECK(separating_line({{0, 0}, {1, 0}, {0, 1}}, {{1, 0}, {2, 0}, {2, 1}}).has_value());
}
