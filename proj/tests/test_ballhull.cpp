#include "doctest.h"
#include "support.hpp"

#include "normclust/ballhull.hpp"

using namespace normclust;
using namespace normclust::testing;

namespace {

double brute_diam(const NormedPlane& plane, const PointSet& s) {
    double best = 0.0;
    for (const auto& p : s)
        for (const auto& q : s) best = std::max(best, plane.gauge(p - q));
    return best;
}

PointSet sorted(PointSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

// Random (S, d) with d between half and 1.5 times the diameter; retried
// until the center set is nonempty.
std::pair<PointSet, BallHull> random_hull(const NormedPlane& plane, Rng& rng, std::size_t n, double& d) {
    for (;;) {
        PointSet s = random_points(rng, n, 0.0, 1.0);
        d = std::max(1e-3, brute_diam(plane, s)) * uniform(rng, 0.55, 1.5);
        try {
            return {s, ball_hull(plane, s, d)};
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::NoBallContainsS);
        }
    }
}

}  // namespace

TEST_CASE("minimal_arcs examples") {
    const auto e = NormedPlane::euclidean();
    auto two = minimal_arcs(e, {0, 0}, {2, 0}, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].center.x == doctest::Approx(1));
    CHECK(two[0].center.y == doctest::Approx(std::sqrt(3.0)));
    CHECK(two[1].center.y == doctest::Approx(-std::sqrt(3.0)));
    // The arc centered above bulges below the chord.
    CHECK(two[0].point_at(e, 0.5).y < 0);
    CHECK(two[1].point_at(e, 0.5).y > 0);

    auto tangent = minimal_arcs(e, {0, 0}, {2, 0}, 1);
    REQUIRE(tangent.size() == 2);
    for (const auto& arc : tangent) {
        CHECK(arc.center.x == doctest::Approx(1));
        CHECK(arc.center.y == doctest::Approx(0).epsilon(1e-6));
        CHECK(arc.sweep() == doctest::Approx(std::numbers::pi));
    }
    CHECK(tangent[0].point_at(e, 0.5).y == doctest::Approx(-1));
    CHECK(tangent[1].point_at(e, 0.5).y == doctest::Approx(1));

    CHECK_THROWS_AS(minimal_arcs(e, {0, 0}, {3, 0}, 1), Error);

    // L∞ with p, q on a common facet direction: both arcs are the segment.
    auto flat = minimal_arcs(NormedPlane::linf(), {0, 0}, {2, 0}, 1);
    CHECK(flat.size() == 1);
}

TEST_CASE("minimal arcs lie in every ball containing their endpoints") {
    Rng rng(17);
    for (const auto& [name, plane] : standard_norms()) {
        CAPTURE(name);
        for (int t = 0; t < 40; ++t) {
            const Point p{uniform(rng, -1, 1), uniform(rng, -1, 1)};
            const Point q{uniform(rng, -1, 1), uniform(rng, -1, 1)};
            const double d = plane.gauge(q - p) * uniform(rng, 0.55, 2.0);
            const auto arcs = minimal_arcs(plane, p, q, d);
            CHECK(!arcs.empty());
            CHECK(arcs.size() <= 2);
            // Containing balls by rejection sampling around the midpoint.
            const Point mid = (p + q) * 0.5;
            const double r = 3 * d * 1.5;
            int balls = 0;
            for (int k = 0; k < 4000 && balls < 30; ++k) {
                const Point c = mid + Vec{uniform(rng, -r, r), uniform(rng, -r, r)};
                if (plane.gauge(p - c) > d || plane.gauge(q - c) > d) continue;
                ++balls;
                for (const auto& arc : arcs)
                    for (const auto& z : arc.sample(plane, 25)) CHECK(plane.gauge(z - c) <= d * (1 + 1e-7));
            }
            for (const auto& arc : arcs) {
                CHECK(plane.gauge(arc.from - arc.center) == doctest::Approx(d).epsilon(1e-7));
                CHECK(plane.gauge(arc.to - arc.center) == doctest::Approx(d).epsilon(1e-7));
            }
        }
    }
}

TEST_CASE("ball_hull examples") {
    const auto e = NormedPlane::euclidean();
    auto single = ball_hull(e, {{3, 4}}, 1);
    CHECK(single.vertices == PointSet{{3, 4}});
    CHECK(bh_contains(e, single, {3, 4}));
    CHECK_FALSE(bh_contains(e, single, {3, 4.1}));

    auto lens = ball_hull(e, {{0, 0}, {2, 0}}, 2);
    REQUIRE(lens.vertices.size() == 2);
    REQUIRE(lens.arcs.size() == 2);
    PointSet centers{lens.arcs[0].center, lens.arcs[1].center};
    std::sort(centers.begin(), centers.end());
    CHECK(centers[0].x == doctest::Approx(1));
    CHECK(centers[0].y == doctest::Approx(-std::sqrt(3.0)));
    CHECK(centers[1].y == doctest::Approx(std::sqrt(3.0)));
    CHECK(bh_contains(e, lens, {0, 0}));
    CHECK(bh_contains(e, lens, {1, 0}));
    CHECK_FALSE(bh_contains(e, lens, {1, 5}));
    CHECK_FALSE(bh_contains(e, lens, {1, 0.3}));  // bulge height is 2 - √3 ≈ 0.268

    CHECK_THROWS_AS(ball_hull(e, {{0, 0}, {5, 0}}, 2), Error);
    CHECK_THROWS_AS(ball_hull(e, {}, 2), Error);
}

TEST_CASE("ball hull structural invariants") {
    Rng rng(29);
    for (const auto& [name, plane] : standard_norms()) {
        CAPTURE(name);
        for (int t = 0; t < 40; ++t) {
            double d = 0;
            const auto [s, hull] = random_hull(plane, rng, 2 + rng() % 20, d);
            // Vertices come from S, S is inside.
            for (const auto& v : hull.vertices) CHECK(std::find(s.begin(), s.end(), v) != s.end());
            for (const auto& p : s) CHECK(bh_contains(plane, hull, p));
            // Arcs are d-arcs joining consecutive vertices.
            for (std::size_t i = 0; i < hull.arcs.size(); ++i) {
                const auto& arc = hull.arcs[i];
                CHECK(arc.from == hull.vertices[i]);
                CHECK(arc.to == hull.vertices[(i + 1) % hull.vertices.size()]);
                CHECK(plane.gauge(arc.from - arc.center) == doctest::Approx(d).epsilon(1e-7));
                CHECK(plane.gauge(arc.to - arc.center) == doctest::Approx(d).epsilon(1e-7));
                // Arc points sit on the hull boundary: inside, and just outward is outside.
                for (const auto& z : arc.sample(plane, 9)) CHECK(bh_contains(plane, hull, z));
            }
            // Every center's ball contains S.
            for (const auto& c : hull.centers)
                for (const auto& p : s) CHECK(plane.gauge(p - c) <= d * (1 + 1e-7));
            // Monotone in the radius.
            for (int k = 0; k < 50; ++k) {
                const Point x{uniform(rng, -0.5, 1.5), uniform(rng, -0.5, 1.5)};
                if (bh_contains(plane, ball_hull(plane, s, 2 * d), x)) CHECK(bh_contains(plane, hull, x));
            }
        }
    }
}

TEST_CASE("tree root matches direct hull") {
    Rng rng(31);
    const auto e = NormedPlane::euclidean();
    const auto s8 = random_points(rng, 8, 0, 1);
    const double d8 = brute_diam(e, s8);
    CHECK(sorted(build_tree(e, s8, d8).root().vertices) == sorted(ball_hull(e, s8, d8).vertices));

    for (const auto& [name, plane] : standard_norms()) {
        CAPTURE(name);
        const auto s = random_points(rng, 1000, 0, 1);
        const double d = brute_diam(plane, s) * 0.8;
        CHECK(sorted(build_tree(plane, s, d).root().vertices) == sorted(ball_hull(plane, s, d).vertices));
    }
    auto one = build_tree(e, {{2, 2}}, 1);
    CHECK(one.root().vertices == PointSet{{2, 2}});
}

TEST_CASE("query_far_point and delete_point examples") {
    const auto e = NormedPlane::euclidean();
    auto tree = build_tree(e, {{0, 0}, {10, 0}}, 6);
    CHECK(*query_far_point(tree, {0, 0}) == Point{10, 0});
    CHECK_FALSE(query_far_point(tree, {5, 0}).has_value());
    delete_point(tree, {10, 0});
    CHECK_FALSE(query_far_point(tree, {0, 0}).has_value());
    CHECK_THROWS_AS(delete_point(tree, {10, 0}), Error);
    delete_point(tree, {0, 0});
    CHECK(tree.live_count() == 0);
    CHECK_FALSE(query_far_point(tree, {100, 100}).has_value());
}

TEST_CASE("query/delete replay matches linear scan") {
    Rng rng(37);
    for (const auto& [name, plane] : standard_norms()) {
        CAPTURE(name);
        const std::size_t n = 20 + rng() % 180;
        PointSet s = random_points(rng, n, 0, 1);
        const double d = brute_diam(plane, s) * uniform(rng, 0.6, 0.9);
        auto tree = build_tree(plane, s, d);
        PointSet live = s;
        for (int op = 0; op < 600 && !live.empty(); ++op) {
            if (rng() % 4 == 0) {
                const std::size_t k = rng() % live.size();
                delete_point(tree, live[k]);
                live.erase(live.begin() + static_cast<std::ptrdiff_t>(k));
                continue;
            }
            const Point u{uniform(rng, -0.5, 1.5), uniform(rng, -0.5, 1.5)};
            const bool expected =
                std::any_of(live.begin(), live.end(), [&](const Point& v) { return plane.gauge(u - v) >= d; });
            const auto got = query_far_point(tree, u);
            REQUIRE(got.has_value() == expected);
            if (got) {
                CHECK(plane.gauge(u - *got) >= d);
                CHECK(std::find(live.begin(), live.end(), *got) != live.end());
            }
        }
    }
}
