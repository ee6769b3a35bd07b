#include "normclust/norm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace normclust {

double magnitude(const PointSet& pts) {
    double m = 1.0;
    for (const auto& p : pts) m = std::max({m, std::abs(p.x), std::abs(p.y)});
    return m;
}

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::NotConvex: return "NotConvex";
        case ErrorCode::OriginNotInterior: return "OriginNotInterior";
        case ErrorCode::DegenerateBody: return "DegenerateBody";
        case ErrorCode::ZeroDirection: return "ZeroDirection";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::TooFewPoints: return "TooFewPoints";
        case ErrorCode::NoOverlap: return "NoOverlap";
        case ErrorCode::EmptyCluster: return "EmptyCluster";
        case ErrorCode::TooFarApart: return "TooFarApart";
        case ErrorCode::NoBallContainsS: return "NoBallContainsS";
        case ErrorCode::NotPresent: return "NotPresent";
        case ErrorCode::BadBounds: return "BadBounds";
        case ErrorCode::DegenerateBasis: return "DegenerateBasis";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::Undecidable: return "Undecidable";
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::IOError: return "IOError";
    }
    return "Unknown";
}

namespace {

double signed_area(const std::vector<Point>& v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * a;
}

std::vector<Point> validate_polygon(std::vector<Point> v, double tol) {
    if (v.size() % 2 == 1) throw Error(ErrorCode::NotSymmetric, "polygon ball has an odd number of vertices");
    if (v.size() < 4) throw Error(ErrorCode::DegenerateBody, "polygon ball needs at least 4 vertices");
    for (const auto& p : v)
        if (!is_finite(p)) throw Error(ErrorCode::DegenerateBody, "non-finite polygon vertex");

    const double scale = magnitude(v);
    const double area = signed_area(v);
    if (std::abs(area) <= tol * scale * scale) throw Error(ErrorCode::DegenerateBody, "polygon ball has no area");
    if (area < 0) std::reverse(v.begin(), v.end());

    const std::size_t m = v.size();
    const std::size_t half = m / 2;
    for (std::size_t i = 0; i < m; ++i) {
        const Point s = v[i] + v[(i + half) % m];
        if (euclid_norm(s) > tol * scale * 10) throw Error(ErrorCode::NotSymmetric, "polygon ball is not centrally symmetric");
    }

    double turning = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const Vec e0 = v[(i + 1) % m] - v[i];
        const Vec e1 = v[(i + 2) % m] - v[(i + 1) % m];
        if (cross(e0, e1) < -tol * scale * scale) throw Error(ErrorCode::NotConvex, "polygon ball is not convex");
        turning += std::atan2(cross(e0, e1), dot(e0, e1));
    }
    if (std::abs(turning - 2 * std::numbers::pi) > 1e-6) throw Error(ErrorCode::NotConvex, "polygon ball winds more than once");

    for (std::size_t i = 0; i < m; ++i)
        if (cross(v[i], v[(i + 1) % m]) <= tol * scale * scale)
            throw Error(ErrorCode::OriginNotInterior, "origin is not interior to the polygon ball");

    // Drop collinear vertices; the facet list must be strictly convex.
    std::vector<Point> out;
    for (std::size_t i = 0; i < m; ++i) {
        const Point& prev = v[(i + m - 1) % m];
        const Point& next = v[(i + 1) % m];
        if (cross(v[i] - prev, next - v[i]) > tol * scale * scale) out.push_back(v[i]);
    }
    return out;
}


// Intersections of two circles of equal radius (0, 1 or 2 points).
std::vector<Point> equal_circle_points(const Point& a, const Point& b, double r, double eps) {
    const Vec ab = b - a;
    const double dd = euclid_norm(ab);
    if (dd < eps || dd > 2 * r + eps) return {};
    const Point mid = (a + b) * 0.5;
    const double h2 = r * r - 0.25 * dd * dd;
    if (h2 <= eps * eps) return {mid};
    const double h = std::sqrt(h2);
    const Vec n = perp(ab / dd);
    return {mid + n * h, mid - n * h};
}

double point_segment_distance(const Point& p, const Segment& s) {
    const Vec ab = s.b - s.a;
    const double len2 = dot(ab, ab);
    double t = len2 == 0.0 ? 0.0 : std::clamp(dot(p - s.a, ab) / len2, 0.0, 1.0);
    return euclid_norm(p - (s.a + ab * t));
}

bool segments_touch(const Segment& s, const Segment& t, double eps) {
    return point_segment_distance(s.a, t) <= eps || point_segment_distance(s.b, t) <= eps ||
           point_segment_distance(t.a, s) <= eps || point_segment_distance(t.b, s) <= eps;
}

// Intersection primitives (points or overlap segments) of two closed segments.
void intersect_segments(const Segment& s, const Segment& t, double eps, std::vector<Segment>& out) {
    const Vec r = s.b - s.a;
    const Vec q = t.b - t.a;
    const double denom = cross(r, q);
    const double rl = euclid_norm(r), ql = euclid_norm(q);
    if (std::abs(denom) <= eps * std::max(1.0, rl * ql)) {
        // Parallel: overlap only when collinear.
        if (std::abs(cross(r, t.a - s.a)) > eps * std::max(1.0, rl)) return;
        const double len2 = dot(r, r);
        double t0 = dot(t.a - s.a, r) / len2;
        double t1 = dot(t.b - s.a, r) / len2;
        if (t0 > t1) std::swap(t0, t1);
        const double lo = std::max(0.0, t0), hi = std::min(1.0, t1);
        const double slack = eps / std::max(rl, eps);
        if (lo > hi + slack) return;
        out.push_back({s.a + r * lo, s.a + r * std::max(lo, hi)});
        return;
    }
    const double u = cross(t.a - s.a, q) / denom;
    const double v = cross(t.a - s.a, r) / denom;
    const double su = eps / std::max(rl, eps), sv = eps / std::max(ql, eps);
    if (u < -su || u > 1 + su || v < -sv || v > 1 + sv) return;
    const Point p = s.a + r * std::clamp(u, 0.0, 1.0);
    out.push_back({p, p});
}

// Groups touching primitives into components and reduces each to its two
// extreme points.
std::vector<Segment> merge_components(const std::vector<Segment>& prims, double eps) {
    const std::size_t n = prims.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (segments_touch(prims[i], prims[j], eps)) parent[find(i)] = find(j);

    std::vector<Segment> out;
    for (std::size_t root = 0; root < n; ++root) {
        if (find(root) != root) continue;
        std::vector<Point> ends;
        for (std::size_t i = 0; i < n; ++i)
            if (find(i) == root) {
                ends.push_back(prims[i].a);
                ends.push_back(prims[i].b);
            }
        Segment best{ends[0], ends[0]};
        double bestd = -1.0;
        for (std::size_t i = 0; i < ends.size(); ++i)
            for (std::size_t j = i; j < ends.size(); ++j) {
                const double dd = euclid_norm(ends[i] - ends[j]);
                if (dd > bestd) {
                    bestd = dd;
                    best = {ends[i], ends[j]};
                }
            }
        if (bestd <= eps) best.b = best.a;
        out.push_back(best);
    }
    return out;
}

}  // namespace

NormedPlane::NormedPlane(NormDescriptor descriptor, double tolerance)
    : descriptor_(std::move(descriptor)), tolerance_(tolerance) {
    if (!(tolerance_ > 0.0)) throw Error(ErrorCode::InvalidInput, "tolerance must be positive");
    if (auto* poly = std::get_if<PolygonBall>(&descriptor_)) {
        vertices_ = validate_polygon(poly->vertices, tolerance_);
        const std::size_t m = vertices_.size();
        normals_.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            const Point& a = vertices_[i];
            const Point& b = vertices_[(i + 1) % m];
            const Vec e = b - a;
            normals_.push_back(Vec{e.y, -e.x} / cross(a, b));
        }
    } else if (auto* arc = std::get_if<TwoArcBall>(&descriptor_)) {
        if (!std::isfinite(arc->center) || !std::isfinite(arc->radius) || !(arc->center > 0.0) ||
            !(arc->radius > arc->center))
            throw Error(ErrorCode::DegenerateBody, "two-arc ball needs 0 < center < radius");
    }
}

NormedPlane NormedPlane::l1() {
    return NormedPlane(PolygonBall{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}});
}

NormedPlane NormedPlane::linf() {
    return NormedPlane(PolygonBall{{{1, -1}, {1, 1}, {-1, 1}, {-1, -1}}});
}

NormedPlane validate_norm(const NormDescriptor& descriptor, double tolerance) {
    return NormedPlane(descriptor, tolerance);
}

double NormedPlane::arc_center() const {
    if (auto* arc = std::get_if<TwoArcBall>(&descriptor_)) return arc->center;
    return 0.0;
}

double NormedPlane::arc_radius() const {
    if (auto* arc = std::get_if<TwoArcBall>(&descriptor_)) return arc->radius;
    return 1.0;
}

double NormedPlane::gauge(const Vec& v) const {
    switch (descriptor_.index()) {
        case 0:
            return std::hypot(v.x, v.y);
        case 1: {
            double g = 0.0;
            for (const auto& n : normals_) g = std::max(g, dot(n, v));
            return g;
        }
        default: {
            const auto& arc = std::get<TwoArcBall>(descriptor_);
            const double c = arc.center;
            const double k = arc.radius * arc.radius - c * c;
            const double ay = std::abs(v.y);
            return (c * ay + std::sqrt(c * c * ay * ay + k * (v.x * v.x + v.y * v.y))) / k;
        }
    }
}

Point NormedPlane::boundary_point(const Vec& direction) const {
    const double g = gauge(direction);
    if (!(g > 0.0) || !std::isfinite(g)) throw Error(ErrorCode::ZeroDirection, "boundary_point needs a nonzero direction");
    return direction / g;
}

std::pair<Vec, Vec> NormedPlane::normal_cone(const Point& b) const {
    switch (descriptor_.index()) {
        case 0:
            return {b, b};
        case 1: {
            const std::size_t m = normals_.size();
            std::vector<std::size_t> active;
            for (std::size_t i = 0; i < m; ++i)
                if (dot(normals_[i], b) >= 1.0 - 1e3 * tolerance_) active.push_back(i);
            if (active.size() == 1) return {normals_[active[0]], normals_[active[0]]};
            if (active.size() >= 2) {
                // Active facets are adjacent; order them counterclockwise.
                const std::size_t i = active[0], j = active[1];
                if (j == i + 1) return {normals_[i], normals_[j]};
                return {normals_[j], normals_[i]};
            }
            // Numerically off the boundary: take the most active facet.
            std::size_t best = 0;
            for (std::size_t i = 1; i < m; ++i)
                if (dot(normals_[i], b) > dot(normals_[best], b)) best = i;
            return {normals_[best], normals_[best]};
        }
        default: {
            const double c = arc_center();
            const Vec upper{b.x, b.y + c};  // arc of the circle centered (0,-c)
            const Vec lower{b.x, b.y - c};  // arc of the circle centered (0,c)
            if (std::abs(b.y) <= 1e3 * tolerance_) {
                if (b.x >= 0) return {lower, upper};
                return {upper, lower};
            }
            return b.y > 0 ? std::pair{upper, upper} : std::pair{lower, lower};
        }
    }
}

Vec NormedPlane::birkhoff_orthogonal(const Vec& x) const {
    const Point b = boundary_point(x);
    auto [n1, n2] = normal_cone(b);
    n1 = n1 / euclid_norm(n1);
    n2 = n2 / euclid_norm(n2);

    Vec tangent;
    const Vec horizontal{b.x >= 0 ? 1.0 : -1.0, 0.0};
    const bool corner = cross(n1, n2) > 1e-12;
    if (corner && cross(n1, horizontal) >= -1e-12 && cross(horizontal, n2) >= -1e-12) {
        tangent = Vec{0.0, 1.0};
    } else {
        tangent = perp(n1 + n2);
    }
    if (cross(x, tangent) < 0) tangent = -tangent;
    return tangent / gauge(tangent);
}

SphereIntersection NormedPlane::sphere_sphere_intersection(const Point& p, const Point& q, double d) const {
    if (p == q) throw Error(ErrorCode::InvalidInput, "sphere_sphere_intersection needs distinct centers");
    if (!(d > 0.0)) throw Error(ErrorCode::InvalidInput, "sphere radius must be positive");
    SphereIntersection result;
    const double scale = std::max({1.0, std::abs(p.x), std::abs(p.y), std::abs(q.x), std::abs(q.y), d});
    const double eps = tolerance_ * scale;
    if (gauge(q - p) > 2 * d + eps) return result;

    std::vector<Segment> prims;
    switch (descriptor_.index()) {
        case 0:
            for (const auto& z : equal_circle_points(p, q, d, eps)) prims.push_back({z, z});
            break;
        case 1: {
            const std::size_t m = vertices_.size();
            for (std::size_t i = 0; i < m; ++i) {
                const Segment s{p + vertices_[i] * d, p + vertices_[(i + 1) % m] * d};
                for (std::size_t j = 0; j < m; ++j) {
                    const Segment t{q + vertices_[j] * d, q + vertices_[(j + 1) % m] * d};
                    intersect_segments(s, t, eps, prims);
                }
            }
            break;
        }
        default: {
            const double c = arc_center() * d;
            const double r = arc_radius() * d;
            // Upper arc of S(z,d): circle centered z-(0,c), points with y >= z.y.
            // Lower arc: circle centered z+(0,c), points with y <= z.y.
            for (int sp : {+1, -1})
                for (int sq : {+1, -1}) {
                    const Point cp = p + Vec{0, -sp * c};
                    const Point cq = q + Vec{0, -sq * c};
                    for (const auto& z : equal_circle_points(cp, cq, r, eps)) {
                        if (sp * (z.y - p.y) < -eps || sq * (z.y - q.y) < -eps) continue;
                        prims.push_back({z, z});
                    }
                }
            break;
        }
    }
    result.components = merge_components(prims, 10 * eps);
    std::sort(result.components.begin(), result.components.end(), [&](const Segment& s, const Segment& t) {
        return orient(p, q, (s.a + s.b) * 0.5) > orient(p, q, (t.a + t.b) * 0.5);
    });
    return result;
}

}  // namespace normclust
