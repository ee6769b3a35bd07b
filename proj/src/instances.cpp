#include "normclust/instances.hpp"

#include <cmath>

namespace normclust {

namespace {

// Newton steps on (gauge(z - a) - ra, gauge(z - b) - rb) from a close start.
Point polish(const NormedPlane& plane, Point z, const Point& a, double ra, const Point& b, double rb) {
    for (int it = 0; it < 8; ++it) {
        auto f = [&](const Point& w) { return Point{plane.gauge(w - a) - ra, plane.gauge(w - b) - rb}; };
        const Point f0 = f(z);
        const double h = 1e-7;
        const Point fx = (f(z + Vec{h, 0}) - f0) / h, fy = (f(z + Vec{0, h}) - f0) / h;
        const double det = fx.x * fy.y - fy.x * fx.y;
        z -= Vec{(f0.x * fy.y - fy.x * f0.y) / det, (fx.x * f0.y - f0.x * fx.y) / det};
    }
    return z;
}

}  // namespace

TwoArcCounterexample two_arc_counterexample() {
    const double radius = 5.0 * std::sqrt(13.0);
    const NormedPlane plane = NormedPlane::two_arc(10.0, radius);
    const Point a{0.0, 0.0}, b{-9.81, 6.24};
    // Upper arc of the unit sphere at the origin: the circle about (0, -10).
    auto upper = [&](double x) { return -10.0 + std::sqrt(radius * radius - x * x); };
    return {
        plane,
        a,
        b,
        polish(plane, {-13.17757172, -2.30250395}, a, 1.0, b, 1.1),
        polish(plane, {6.21357925, 6.92310352}, a, 1.0, b, 1.1),
        {-9.39, upper(-9.39)},
        {-8.24, upper(-8.24)},
    };
}

}  // namespace normclust
