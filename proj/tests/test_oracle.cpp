#include "doctest.h"
#include "support.hpp"

#include "normclust/ballhull.hpp"
#include "normclust/oracle.hpp"

using namespace normclust;
using namespace normclust::testing;

TEST_CASE("brute_force_k_partition") {
    const auto e = NormedPlane::euclidean();
    CHECK(oracle::brute_force_k_partition(e, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 2, {}).value == doctest::Approx(1));
    const PointSet pairs{{0, 0}, {0.1, 0}, {10, 0}, {10.1, 0}, {5, 9}, {5, 9.1}};
    const auto r = oracle::brute_force_k_partition(e, pairs, 3, {});
    CHECK(r.value == doctest::Approx(0.1));
    CHECK(r.partition.clusters.size() == 3);

    oracle::OracleBudget tight;
    tight.max_points = 5;
    CHECK_THROWS_AS(oracle::brute_force_k_partition(e, pairs, 3, {}, tight), Error);
}

TEST_CASE("enclosing_ball oracle") {
    const auto e = NormedPlane::euclidean();
    const auto b = oracle::enclosing_ball(e, {{0, 0}, {2, 0}, {1, 0.5}});
    CHECK(b.radius == doctest::Approx(1).epsilon(1e-9));
    CHECK(oracle::enclosing_ball(NormedPlane::linf(), {{0, 0}, {2, 0}, {0, 2}}).radius == doctest::Approx(1));
}

TEST_CASE("bh_membership_oracle examples") {
    const auto e = NormedPlane::euclidean();
    CHECK(oracle::bh_membership_oracle(e, {{2, 3}}, 1, {2, 3}));
    CHECK_FALSE(oracle::bh_membership_oracle(e, {{2, 3}}, 1, {2.5, 3}));
    CHECK_FALSE(oracle::bh_membership_oracle(e, {{0, 0}, {2, 0}}, 2, {1, 3}));
    CHECK(oracle::bh_membership_oracle(e, {{0, 0}, {2, 0}}, 2, {1, 0.1}));
    CHECK_THROWS_AS(oracle::bh_membership_oracle(e, {{0, 0}, {5, 0}}, 2, {1, 0}), Error);
    CHECK(oracle::bh_membership_oracle(e, {{0, 0}, {2, 0}}, 2, {0, 0}));
    // Just off a vertex, on the hull boundary.
    CHECK_THROWS_AS(oracle::bh_membership_oracle(e, {{0, 0}, {2, 0}}, 2, {1e-12, 0}), Error);
}

TEST_CASE("bh_membership_oracle agrees with bh_contains") {
    Rng rng(71);
    for (const auto& [name, plane] : standard_norms()) {
        CAPTURE(name);
        std::size_t decided = 0;
        for (int t = 0; t < 6; ++t) {
            const auto s = random_points(rng, 2 + rng() % 10, 0, 1);
            double diam = 0;
            for (const auto& p : s)
                for (const auto& q : s) diam = std::max(diam, plane.gauge(p - q));
            const double d = diam * uniform(rng, 0.6, 1.5);
            BallHull hull;
            try {
                hull = ball_hull(plane, s, d);
            } catch (const Error&) {
                continue;
            }
            const oracle::CenterSet centers(plane, s, d);
            for (int k = 0; k < 150; ++k) {
                const Point x{uniform(rng, -0.3, 1.3), uniform(rng, -0.3, 1.3)};
                try {
                    CHECK(centers.contains(x) == bh_contains(plane, hull, x));
                    ++decided;
                } catch (const Error& err) {
                    CHECK(err.code() == ErrorCode::Undecidable);
                }
            }
        }
        CHECK(decided > 0);
    }
}

TEST_CASE("exhaustive_separable_2cluster") {
    const auto e = NormedPlane::euclidean();
    const PointSet s{{0, 0}, {0.5, 0.2}, {10, 0}, {10.3, 0.4}};
    const auto p = oracle::exhaustive_separable_2cluster(e, s, 1, 1);
    REQUIRE(p.has_value());
    CHECK(p->clusters[0].size() == 2);
    CHECK_FALSE(oracle::exhaustive_separable_2cluster(e, s, 0.4, 0.4).has_value());
}
