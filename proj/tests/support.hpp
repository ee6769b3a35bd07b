#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "normclust/geometry.hpp"
#include "normclust/norm.hpp"

namespace normclust::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline PointSet random_points(Rng& rng, std::size_t n, double lo = -10.0, double hi = 10.0) {
    PointSet pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({uniform(rng, lo, hi), uniform(rng, lo, hi)});
    return pts;
}

/// Random centrally symmetric convex polygon with 2*half vertices.
inline NormedPlane random_polygon_norm(Rng& rng, std::size_t half = 4) {
    for (;;) {
        std::vector<double> angles;
        for (std::size_t i = 0; i < half; ++i) angles.push_back(uniform(rng, 0.0, std::numbers::pi));
        std::sort(angles.begin(), angles.end());
        std::vector<Point> v;
        for (double a : angles) {
            const double r = uniform(rng, 0.6, 1.4);
            v.push_back({r * std::cos(a), r * std::sin(a)});
        }
        const std::size_t k = v.size();
        for (std::size_t i = 0; i < k; ++i) v.push_back(-v[i]);
        // The hull of a centrally symmetric set is centrally symmetric.
        const auto hull = convex_hull(v).vertices;
        try {
            return NormedPlane(PolygonBall{hull});
        } catch (const Error&) {
            continue;
        }
    }
}

struct NamedNorm {
    std::string name;
    NormedPlane plane;
};

inline NormedPlane figure_two_arc() { return NormedPlane::two_arc(10.0, 5.0 * std::sqrt(13.0)); }

/// Euclidean, L1, L∞, three random polygon norms and TwoArc(10, 5√13).
inline std::vector<NamedNorm> standard_norms(std::uint64_t seed = 7) {
    Rng rng(seed);
    std::vector<NamedNorm> out{{"euclidean", NormedPlane::euclidean()},
                               {"l1", NormedPlane::l1()},
                               {"linf", NormedPlane::linf()}};
    for (int i = 0; i < 3; ++i) out.push_back({"polygon" + std::to_string(i), random_polygon_norm(rng, 3 + i)});
    out.push_back({"two_arc", figure_two_arc()});
    return out;
}

}  // namespace normclust::testing
