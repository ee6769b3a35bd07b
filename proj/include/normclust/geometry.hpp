#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "normclust/norm.hpp"
#include "normclust/point.hpp"

namespace normclust {

/// Convex polygon, counterclockwise, no three consecutive vertices collinear.
/// One vertex for a single point, two for a segment.
struct ConvexPolygon {
    std::vector<Point> vertices;

    std::size_t size() const { return vertices.size(); }
    bool degenerate() const { return vertices.size() < 3; }
};

struct OrientedLine {
    Point anchor;
    Vec direction;

    static OrientedLine through(const Point& a, const Point& b) { return {a, b - a}; }
    OrientedLine reversed() const { return {anchor, -direction}; }
};

enum class Side { Left, On, Right };
enum class OnRule { ToLeft, ToRight };

/// Andrew's monotone chain. Throws EmptyInput.
ConvexPolygon convex_hull(const PointSet& points);
/// Hull vertices as indices into `points`.
std::vector<std::size_t> convex_hull_indices(const PointSet& points);

struct DiameterResult {
    double value = 0.0;
    std::pair<Point, Point> pair;
};

/// Normed diameter by rotating calipers over antipodal hull vertices.
/// Throws EmptyInput.
DiameterResult diameter(const NormedPlane& plane, const PointSet& points);
/// All-pairs diameter; exact comparison semantics for threshold tests.
double diameter_bruteforce(const NormedPlane& plane, const PointSet& points);

/// Perimeter measured in the plane's norm; a segment counts out and back.
double norm_perimeter(const NormedPlane& plane, const ConvexPolygon& polygon);

double polygon_area(const ConvexPolygon& polygon);
bool polygon_contains(const ConvexPolygon& polygon, const Point& p, double eps);

/// Sidedness with a tolerance band scaled by input magnitude.
Side side_of(const OrientedLine& line, const Point& p, double tol = kDefaultTolerance);

/// True when the closed segment meets the line.
bool line_meets_segment(const OrientedLine& line, const Segment& s, double tol = kDefaultTolerance);

/// A line meeting every segment, or nullopt. Candidates are lines through
/// two segment endpoints and lines through an endpoint parallel to a segment.
std::optional<OrientedLine> stabbing_line(const std::vector<Segment>& segments, double tol = kDefaultTolerance);

struct LineSplit {
    PointSet left;
    PointSet right;
};

LineSplit split_by_line(const PointSet& points, const OrientedLine& line, OnRule rule,
                        double tol = kDefaultTolerance);

struct PairDistance {
    double value;
    std::size_t i;
    std::size_t j;
};

/// All n(n-1)/2 distances ascending, ties by (i, j). Throws TooFewPoints.
std::vector<PairDistance> sorted_pairwise_distances(const NormedPlane& plane, const PointSet& points);

/// Closed-halfplane separating line of two point sets (left: first set), if any.
std::optional<OrientedLine> separating_line(const PointSet& first, const PointSet& second,
                                            double tol = kDefaultTolerance);

/// Intersection of two convex polygons (Sutherland-Hodgman); may be empty.
ConvexPolygon convex_intersection(const ConvexPolygon& a, const ConvexPolygon& b);

}  // namespace normclust
