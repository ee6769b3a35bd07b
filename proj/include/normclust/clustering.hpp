#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normclust/geometry.hpp"
#include "normclust/norm.hpp"

namespace normclust {

using IndexSet = std::vector<std::size_t>;

/// Disjoint cover of 0..n-1. `measures[i]` is the diameter (or radius, when
/// produced under that measure) of clusters[i]. Clusters may be empty.
struct Partition {
    std::vector<IndexSet> clusters;
    std::vector<double> measures;

    std::size_t size() const { return clusters.size(); }
};

enum class Combiner { Max, Sum, SumSquares };
enum class Measure { Diameter, Radius };

struct Objective {
    Combiner combiner = Combiner::Max;
    Measure measure = Measure::Diameter;
};

std::string to_string(Combiner c);
std::string to_string(Measure m);
/// Throws InvalidInput on an unknown name.
Combiner combiner_from_string(const std::string& name);
Measure measure_from_string(const std::string& name);

/// Objective value of per-cluster measures.
double combine(Combiner c, const std::vector<double>& measures);

/// Coordinates u = x*ex + y*ey with ex of unit gauge and ex Birkhoff
/// orthogonal to ey.
struct Basis {
    Vec ex{1.0, 0.0};
    Vec ey{0.0, 1.0};

    static Basis standard(const NormedPlane& plane);
    /// ex at `angle`, ey = birkhoff_orthogonal(ex).
    static Basis rotated(const NormedPlane& plane, double angle);
    Point coords(const Point& p) const;
};

struct Zones {
    IndexSet north;
    IndexSet south;
    IndexSet east;
    /// a, a' and every point of S on the segment between them.
    IndexSet seed;
    std::size_t a = 0;
    std::size_t a_prime = 0;
};

/// Forced and candidate sets of the third case.
struct HRState {
    IndexSet a0, b0, c0;
    IndexSet ab_cand, ca_cand, bc_cand;
    double d = 0.0;
};

struct HRStats {
    std::size_t a_prime_tried = 0;
    std::size_t case1 = 0;
    std::size_t case2 = 0;
    std::size_t case3 = 0;
    std::size_t stopped = 0;
    /// diam(A_cand ∩ North) and diam(A_cand ∩ South) checks against d.
    std::size_t lemma_checks = 0;
    std::size_t lemma_violations = 0;
    /// Seed and angle of the coordinate rotation actually used.
    std::uint64_t seed = 0;
    double angle = 0.0;
    /// Runs whose coordinates needed a tie-breaking shear.
    std::size_t sheared = 0;
};

/// Two-coloring of the graph of pairs farther apart than d, split by a
/// stabbing line when a cheap one exists. nullopt when no 2-partition with
/// both diameters at most d exists.
std::optional<Partition> feasible_2cluster(const NormedPlane& plane, const PointSet& s, double d);

struct ClusterResult {
    double value = 0.0;
    Partition partition;
};

/// Min-max diameter 2-clustering. Throws TooFewPoints.
ClusterResult avis_min_max_2cluster(const NormedPlane& plane, const PointSet& s);

/// A separable 2-partition with diam(clusters[0]) <= d1 and
/// diam(clusters[1]) <= d2, both clusters nonempty when |S| >= 2.
/// Throws BadBounds.
std::optional<Partition> constrained_2cluster(const NormedPlane& plane, const PointSet& s, double d1, double d2);

struct Ball {
    Point center;
    double radius = 0.0;
};

/// Smallest enclosing ball. Throws EmptyInput.
Ball min_enclosing_ball(const NormedPlane& plane, const PointSet& s);

/// Exact optimum over pairwise separable k-partitions, k in 2..4, n <= 64.
/// Throws TooFewPoints, InvalidInput.
ClusterResult k_cluster_minimize(const NormedPlane& plane, const PointSet& s, int k, Objective objective);

/// Throws DegenerateBasis when a is not strictly leftmost or coordinates tie.
Zones hr_zones(const NormedPlane& plane, const PointSet& s, std::size_t a, std::size_t a_prime,
               const Basis& basis);
Zones hr_zones(const NormedPlane& plane, const PointSet& s, std::size_t a, std::size_t a_prime);

/// Partition into three clusters of diameter at most d, or nullopt.
/// Throws TooFewPoints.
std::optional<Partition> hr_feasible_3cluster(const NormedPlane& plane, const PointSet& s, double d,
                                              std::uint64_t seed = 1, HRStats* stats = nullptr);

/// Throws TooFewPoints.
ClusterResult min_max_3cluster(const NormedPlane& plane, const PointSet& s, std::uint64_t seed = 1,
                               HRStats* stats = nullptr);

/// 2-SAT over variables 0..n-1; a literal is (variable, value).
class TwoSat {
public:
    explicit TwoSat(std::size_t n) : n_(n), graph_(2 * n) {}

    /// (x == vx) or (y == vy)
    void add_clause(std::size_t x, bool vx, std::size_t y, bool vy);
    void force(std::size_t x, bool value) { add_clause(x, value, x, value); }
    std::optional<std::vector<bool>> solve() const;

private:
    std::size_t node(std::size_t x, bool v) const { return 2 * x + (v ? 1 : 0); }

    std::size_t n_;
    std::vector<std::vector<std::size_t>> graph_;
};

/// Diameters of each cluster; fills `measures`.
void measure_partition(const NormedPlane& plane, const PointSet& s, Partition& p, Measure m = Measure::Diameter);

}  // namespace normclust
