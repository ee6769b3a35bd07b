#pragma once

#include <optional>
#include <vector>

#include "normclust/norm.hpp"

namespace normclust {

/// Portion of the sphere S(center, radius) from `from` to `to`, swept
/// counterclockwise around the center when `ccw`, clockwise otherwise.
/// For polygon norms the arc is a polyline; points are exact either way.
struct Arc {
    Point center;
    double radius = 0.0;
    Point from;
    Point to;
    bool ccw = true;

    /// Angular span of the sweep in [0, 2π).
    double sweep() const;
    /// Point at parameter t in [0, 1] along the sweep.
    Point point_at(const NormedPlane& plane, double t) const;
    std::vector<Point> sample(const NormedPlane& plane, std::size_t count) const;
};

/// Boundary of bh(S, d): vertices drawn from S in ccw order, arcs[i] joining
/// vertices[i] to vertices[i+1]. `centers` are the extreme points of the
/// center set ⋂ B(s, d); bh(S, d) is the intersection of their balls.
struct BallHull {
    double d = 0.0;
    std::vector<Point> vertices;
    std::vector<Arc> arcs;
    std::vector<Point> centers;

    bool empty() const { return vertices.empty(); }
};

/// The d-minimal arcs between p and q: one per side of ⟨p,q⟩, a single arc
/// when both would be the segment pq. Throws TooFarApart.
std::vector<Arc> minimal_arcs(const NormedPlane& plane, const Point& p, const Point& q, double d);

/// Throws NoBallContainsS, EmptyInput.
BallHull ball_hull(const NormedPlane& plane, const PointSet& s, double d);

bool bh_contains(const NormedPlane& plane, const BallHull& hull, const Point& x);

/// Segment tree over the points sorted by (x, y); each node keeps the ball
/// hull of its live leaves, rebuilt from the children's hull vertices.
class BallHullTree {
public:
    BallHullTree(const NormedPlane& plane, const PointSet& s, double d);

    double radius() const { return d_; }
    std::size_t live_count() const { return live_count_; }
    const BallHull& root() const { return nodes_[1]; }
    const std::vector<Point>& leaves() const { return leaves_; }

    std::optional<Point> query_far_point(const Point& u) const;
    /// Throws NotPresent.
    void delete_point(const Point& p);

private:
    void rebuild(std::size_t node);

    NormedPlane plane_;
    double d_;
    std::size_t size_ = 1;
    std::vector<Point> leaves_;
    std::vector<bool> live_;
    std::vector<BallHull> nodes_;
    std::size_t live_count_ = 0;
};

/// Throws NoBallContainsS, EmptyInput.
BallHullTree build_tree(const NormedPlane& plane, const PointSet& s, double d);
std::optional<Point> query_far_point(const BallHullTree& tree, const Point& u);
void delete_point(BallHullTree& tree, const Point& p);

}  // namespace normclust
