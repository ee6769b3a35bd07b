#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "normclust/point.hpp"

namespace normclust {

struct EuclideanBall {};

/// Centrally symmetric convex polygon, vertices counterclockwise.
struct PolygonBall {
    std::vector<Point> vertices;
};

/// Unit ball bounded by two circular arcs of radius `radius` centered at
/// (0, center) and (0, -center): the lens D((0,c),R) ∩ D((0,-c),R).
struct TwoArcBall {
    double center = 0.0;
    double radius = 0.0;
};

using NormDescriptor = std::variant<EuclideanBall, PolygonBall, TwoArcBall>;

/// Connected pieces of the intersection of two spheres of equal radius. Each
/// component is stored by its two extreme points (a == b for a single point).
struct SphereIntersection {
    std::vector<Segment> components;
};

inline constexpr double kDefaultTolerance = 1e-9;

/// A validated symmetric convex distance function on the plane.
///
/// Immutable after construction; every member function is const and
/// thread-safe.
class NormedPlane {
public:
    /// Validates the descriptor. Throws Error with NotSymmetric, NotConvex,
    /// OriginNotInterior or DegenerateBody.
    explicit NormedPlane(NormDescriptor descriptor, double tolerance = kDefaultTolerance);

    static NormedPlane euclidean() { return NormedPlane(EuclideanBall{}); }
    /// L1 norm: the diamond with vertices (±1,0), (0,±1).
    static NormedPlane l1();
    /// L∞ norm: the square with vertices (±1,±1).
    static NormedPlane linf();
    static NormedPlane two_arc(double center, double radius) { return NormedPlane(TwoArcBall{center, radius}); }

    const NormDescriptor& descriptor() const { return descriptor_; }
    double tolerance() const { return tolerance_; }

    bool is_euclidean() const { return std::holds_alternative<EuclideanBall>(descriptor_); }
    bool is_polygon() const { return std::holds_alternative<PolygonBall>(descriptor_); }
    bool is_two_arc() const { return std::holds_alternative<TwoArcBall>(descriptor_); }
    bool strictly_convex() const { return !is_polygon(); }

    /// Minkowski functional of the unit ball.
    double gauge(const Vec& v) const;
    double dist(const Point& p, const Point& q) const { return gauge(q - p); }

    /// The positive multiple of `direction` on the unit sphere.
    Point boundary_point(const Vec& direction) const;

    /// Unit-gauge y with gauge(x) <= gauge(x + t*y) for all real t, oriented
    /// so that cross(x, y) > 0. At corners of the sphere the normal cone is
    /// bisected, except that the vertical direction wins whenever it is
    /// admissible.
    Vec birkhoff_orthogonal(const Vec& x) const;

    /// S(p,d) ∩ S(q,d). Empty when gauge(p-q) > 2d.
    SphereIntersection sphere_sphere_intersection(const Point& p, const Point& q, double d) const;

    /// Outward normals of the polygon facets scaled so that gauge(v) is the
    /// maximum of dot(normal, v). Empty for curved norms.
    const std::vector<Vec>& facet_normals() const { return normals_; }
    /// Unit-ball polygon vertices after validation (collinear vertices removed).
    const std::vector<Point>& polygon_vertices() const { return vertices_; }

    /// Parameters of curved variants: for Euclidean center 0, radius 1.
    double arc_center() const;
    double arc_radius() const;

    /// Normal cone of the unit ball at boundary point b, as two directions
    /// (equal when the boundary is smooth at b).
    std::pair<Vec, Vec> normal_cone(const Point& b) const;

private:
    NormDescriptor descriptor_;
    double tolerance_;
    std::vector<Point> vertices_;
    std::vector<Vec> normals_;
};

/// Validates a descriptor, returning the plane or throwing Error.
NormedPlane validate_norm(const NormDescriptor& descriptor, double tolerance = kDefaultTolerance);

}  // namespace normclust
