#pragma once

#include <chrono>
#include <cstddef>
#include <optional>

#include "normclust/clustering.hpp"
#include "normclust/norm.hpp"

namespace normclust::oracle {

// Brute-force references. Apart from NormedPlane::gauge and the norm's own
// polygon vertices, nothing here calls into the library's algorithms.

struct OracleBudget {
    std::size_t max_points = 16;
    double max_partitions = 5e7;
    std::chrono::seconds time_cap{120};
};

/// Exact optimum over all k-labelings up to relabeling. Throws BudgetExceeded.
ClusterResult brute_force_k_partition(const NormedPlane& plane, const PointSet& s, int k, Objective objective,
                                      const OracleBudget& budget = {});

/// Enclosing-ball radius by nested golden-section search on the convex
/// function c -> max gauge(s - c).
Ball enclosing_ball(const NormedPlane& plane, const PointSet& s);

/// x ∈ bh(S, d), decided from the extreme points of the center set.
/// Throws NoBallContainsS, and Undecidable when x is within
/// `band * max(1, d)` of the boundary.
bool bh_membership_oracle(const NormedPlane& plane, const PointSet& s, double d, const Point& x,
                          double band = 1e-7);

/// Precomputed center set for repeated membership queries.
class CenterSet {
public:
    /// Throws NoBallContainsS.
    CenterSet(const NormedPlane& plane, const PointSet& s, double d);
    bool contains(const Point& x, double band = 1e-7) const;

private:
    double farthest(const Point& x) const;
    double ray(double theta) const;
    Point at(double theta) const;

    NormedPlane plane_;
    PointSet s_;
    double d_;
    bool exact_ = false;
    Point origin_;
    std::vector<double> thetas_;
    PointSet boundary_;
    double gap_ = 0.0;
};

/// First separable split found over every line through two points, with
/// every assignment of on-line points. Throws BudgetExceeded.
std::optional<Partition> exhaustive_separable_2cluster(const NormedPlane& plane, const PointSet& s, double d1,
                                                       double d2, const OracleBudget& budget = {});

}  // namespace normclust::oracle
