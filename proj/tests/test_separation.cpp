#include "doctest.h"
#include "support.hpp"

#include "normclust/separation.hpp"

using namespace normclust;
using namespace normclust::testing;

namespace {

double brute_diam(const NormedPlane& plane, const PointSet& s) {
    double best = 0.0;
    for (const auto& p : s)
        for (const auto& q : s) best = std::max(best, plane.gauge(p - q));
    return best;
}

// Closed-halfplane separability of the result by its own line, using a raw
// determinant with a small scaled band.
bool separated(const SeparationResult& r) {
    const Vec dir = r.line.direction;
    auto det = [&](const Point& p) { return cross(dir, p - r.line.anchor); };
    double scale = euclid_norm(dir) * std::max(1.0, magnitude(r.a_prime) + magnitude(r.b_prime) + magnitude({r.line.anchor}));
    for (const auto& p : r.a_prime)
        if (det(p) < -1e-9 * scale) return false;
    for (const auto& p : r.b_prime)
        if (det(p) > 1e-9 * scale) return false;
    return true;
}

bool same_multiset(PointSet x, PointSet y) {
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
}

void check_invariants(const NormedPlane& plane, const PointSet& a, const PointSet& b, const SeparationResult& r) {
    PointSet before = a, after = r.a_prime;
    before.insert(before.end(), b.begin(), b.end());
    after.insert(after.end(), r.b_prime.begin(), r.b_prime.end());
    CHECK(same_multiset(before, after));
    CHECK(separated(r));
    CHECK(brute_diam(plane, r.a_prime) <= brute_diam(plane, a) + 1e-9);
    CHECK(brute_diam(plane, r.b_prime) <= brute_diam(plane, b) + 1e-9);
    const auto [p0, p1] = perimeter_check(plane, a, b, r);
    CHECK(p1 <= p0 + 1e-9);
}

const ConvexPolygon kStarA{{{0, 3}, {-2.6, -1.5}, {2.6, -1.5}}};
const ConvexPolygon kStarB{{{0, -3}, {2.6, 1.5}, {-2.6, 1.5}}};

}  // namespace

TEST_CASE("boundary_crossings examples") {
    const ConvexPolygon sq1{{{0, 0}, {2, 0}, {2, 2}, {0, 2}}};
    const ConvexPolygon sq2{{{1, 1}, {3, 1}, {3, 3}, {1, 3}}};
    const ConvexPolygon far{{{10, 10}, {12, 10}, {12, 12}, {10, 12}}};
    CHECK(boundary_crossings(sq1, sq2).points.size() == 2);
    CHECK(boundary_crossings(sq1, far).points.empty());
    CHECK(boundary_crossings(kStarA, kStarB).points.size() == 6);
    const ConvexPolygon inner{{{0.5, 0.5}, {1, 0.5}, {1, 1}}};
    CHECK(boundary_crossings(sq1, inner).points.empty());
}

TEST_CASE("decompose_pieces examples") {
    SUBCASE("offset squares") {
        const PointSet a{{0, 0}, {2, 0}, {2, 2}, {0, 2}}, b{{1, 1}, {3, 1}, {3, 3}, {1, 3}};
        const auto pieces = decompose_pieces(a, b, boundary_crossings(convex_hull(a), convex_hull(b)));
        REQUIRE(pieces.size() == 2);
        CHECK(pieces[0].owner == PieceOwner::A);
        CHECK(pieces[1].owner == PieceOwner::B);
        CHECK(pieces[0].points.size() == 3);
        CHECK(pieces[1].points.size() == 3);
    }
    SUBCASE("star of David") {
        const auto pieces = decompose_pieces(kStarA.vertices, kStarB.vertices, boundary_crossings(kStarA, kStarB));
        REQUIRE(pieces.size() == 6);
        for (std::size_t k = 0; k < 6; ++k) {
            CHECK(pieces[k].owner == (k % 2 == 0 ? PieceOwner::A : PieceOwner::B));
            CHECK(pieces[k].points.size() == 1);
            CHECK(pieces[k].outline.size() == 3);
        }
    }
    SUBCASE("square crossed by a long rectangle") {
        const PointSet a{{0, 0}, {2, 0}, {2, 2}, {0, 2}}, b{{-1, 0.5}, {3, 0.5}, {3, 1.5}, {-1, 1.5}};
        const auto pieces = decompose_pieces(a, b, boundary_crossings(convex_hull(a), convex_hull(b)));
        CHECK(pieces.size() == 4);
    }
    SUBCASE("no crossings") {
        CHECK_THROWS_AS(decompose_pieces({{0, 0}}, {{1, 1}}, CrossingSequence{}), Error);
    }
}

TEST_CASE("find_bad_structure examples") {
    const auto e = NormedPlane::euclidean();
    SUBCASE("all cross distances small") {
        const PointSet a{{0, 0}, {2, 0}, {2, 2}, {0, 2}}, b{{1, 1}, {3, 1}, {3, 3}, {1, 3}};
        const auto pieces = decompose_pieces(a, b, boundary_crossings(convex_hull(a), convex_hull(b)));
        const auto bad = find_bad_structure(e, pieces, brute_diam(e, a) + 10);
        CHECK(bad.pairs.empty());
        CHECK(bad.groups.groups_a.empty());
        CHECK(bad.groups.groups_b.empty());
    }
    SUBCASE("flat clusters with one far point each") {
        const PointSet a{{-3, 0}, {0, 0.5}, {3, 0}, {0, -0.5}}, b{{2.4, -2}, {2.6, -2}, {2.5, 3}};
        const auto pieces = decompose_pieces(a, b, boundary_crossings(convex_hull(a), convex_hull(b)));
        REQUIRE(pieces.size() == 4);
        const auto bad = find_bad_structure(e, pieces, brute_diam(e, a));
        REQUIRE(bad.pairs.size() == 1);
        CHECK(bad.pairs[0].length > 6);
        CHECK(bad.pairs[0].witness.a == Point{-3, 0});
        CHECK(bad.pairs[0].witness.b == Point{2.5, 3});
        CHECK(bad.groups.groups_a.size() == 1);
        CHECK(bad.groups.groups_b.size() == 1);

        const auto r = separate_clusters(e, a, b);
        check_invariants(e, a, b, r);
        CHECK(r.witness == SeparationWitness::GroupSplit);
    }
}

TEST_CASE("separate_clusters examples") {
    const auto e = NormedPlane::euclidean();
    const PointSet a{{0, 0}, {1, 0}}, b{{0, 3}, {1, 3}};
    const auto r = separate_clusters(e, a, b);
    CHECK(r.witness == SeparationWitness::DisjointHulls);
    CHECK(same_multiset(r.a_prime, a));
    CHECK(same_multiset(r.b_prime, b));
    check_invariants(e, a, b, r);
    const auto [before, after] = perimeter_check(e, a, b, r);
    CHECK(before == doctest::Approx(after));

    CHECK_THROWS_AS(separate_clusters(e, {}, b), Error);

    // Nested: B inside A.
    const PointSet big{{0, 0}, {4, 0}, {4, 4}, {0, 4}}, in{{1, 1}, {2, 1}, {1, 2}};
    const auto n = separate_clusters(e, big, in);
    CHECK(n.witness == SeparationWitness::NoBadPairs);
    CHECK(n.b_prime.empty());
    check_invariants(e, big, in, n);
    const auto [nb, na] = perimeter_check(e, big, in, n);
    CHECK(na == doctest::Approx(16));
    CHECK(na < nb);

    // Larger-diameter B is handled by swapping roles internally.
    const auto s = separate_clusters(e, in, big);
    CHECK(s.a_prime.empty());
    check_invariants(e, in, big, s);
}

TEST_CASE("interlocked clusters") {
    // A long horizontal cluster with a long vertical one through its middle.
    const PointSet a{{-5, 0}, {5, 0}, {0, 0.4}, {0, -0.4}, {-4.5, 0.2}, {4.5, -0.2}};
    const PointSet b{{0.3, -4.8}, {-0.3, 4.8}, {0.5, 0}, {-0.5, 0}};
    for (const auto& [name, plane] : standard_norms()) {
        CAPTURE(name);
        const auto r = separate_clusters(plane, a, b);
        check_invariants(plane, a, b, r);
    }
}

TEST_CASE("separation invariants on random instances") {
    Rng rng(1234);
    std::size_t group_split = 0, fallback = 0;
    for (const auto& [name, plane] : standard_norms()) {
        CAPTURE(name);
        for (int t = 0; t < 150; ++t) {
            const auto a = random_points(rng, 1 + rng() % 12);
            const auto b = random_points(rng, 1 + rng() % 12);
            const auto r = separate_clusters(plane, a, b);
            check_invariants(plane, a, b, r);
            group_split += r.witness == SeparationWitness::GroupSplit;
            fallback += r.witness == SeparationWitness::CandidateSearch;

            // Strict perimeter decrease when the hull interiors meet.
            const auto ha = convex_hull(a), hb = convex_hull(b);
            if (!ha.degenerate() && !hb.degenerate() && polygon_area(convex_intersection(ha, hb)) > 1e-6) {
                const auto [before, after] = perimeter_check(plane, a, b, r);
                CHECK(after < before - 1e-9);
            }

            // Group counts are equal and odd whenever bad pairs exist.
            if (ha.degenerate() || hb.degenerate()) continue;
            const bool swap = brute_diam(plane, b) > brute_diam(plane, a);
            const PointSet& big = swap ? b : a;
            const PointSet& small = swap ? a : b;
            const auto cs = boundary_crossings(convex_hull(big), convex_hull(small));
            if (cs.points.empty()) continue;
            const auto pieces = decompose_pieces(big, small, cs);
            const auto bad = find_bad_structure(plane, pieces, brute_diam(plane, big));
            if (bad.pairs.empty()) continue;
            CHECK(bad.groups.groups_a.size() == bad.groups.groups_b.size());
            CHECK(bad.groups.groups_a.size() % 2 == 1);
        }
    }
    MESSAGE("group splits: " << group_split << ", candidate fallbacks: " << fallback);
    CHECK(group_split > 0);
}
