#include "normclust/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace normclust::oracle {

namespace {

using Clock = std::chrono::steady_clock;

void over_budget(const char* what) { throw Error(ErrorCode::BudgetExceeded, what); }

double pair_diameter(const NormedPlane& plane, const PointSet& pts) {
    double v = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) v = std::max(v, plane.gauge(pts[i] - pts[j]));
    return v;
}

double farthest_from(const NormedPlane& plane, const PointSet& s, const Point& c) {
    double v = 0.0;
    for (const auto& p : s) v = std::max(v, plane.gauge(p - c));
    return v;
}

// Largest Euclidean length of a unit-gauge vector, sampled.
double euclid_reach(const NormedPlane& plane) {
    double r = 0.0;
    for (int i = 0; i < 720; ++i) {
        const double t = i * std::numbers::pi / 360;
        r = std::max(r, 1.0 / plane.gauge({std::cos(t), std::sin(t)}));
    }
    return r * 1.01;
}

template <class F>
double golden_min(double lo, double hi, F&& f, int iters, double* arg = nullptr) {
    const double g = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    if (arg) *arg = f1 <= f2 ? x1 : x2;
    return std::min(f1, f2);
}

}  // namespace

Ball enclosing_ball(const NormedPlane& plane, const PointSet& s) {
    if (s.empty()) throw Error(ErrorCode::EmptyInput, "enclosing ball of an empty set");
    double x0 = s[0].x, x1 = s[0].x, y0 = s[0].y, y1 = s[0].y;
    for (const auto& p : s) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    const double pad = pair_diameter(plane, s) * euclid_reach(plane) + 1e-9;
    x0 -= pad, x1 += pad, y0 -= pad, y1 += pad;
    auto column = [&](double x, double* arg) {
        return golden_min(y0, y1, [&](double y) { return farthest_from(plane, s, {x, y}); }, 90, arg);
    };
    double bx = 0.0, by = 0.0;
    golden_min(x0, x1, [&](double x) { return column(x, nullptr); }, 90, &bx);
    column(bx, &by);
    return {{bx, by}, farthest_from(plane, s, {bx, by})};
}

ClusterResult brute_force_k_partition(const NormedPlane& plane, const PointSet& s, int k, Objective objective,
                                      const OracleBudget& budget) {
    if (k < 1) throw Error(ErrorCode::InvalidInput, "k must be positive");
    const std::size_t n = s.size();
    if (n > budget.max_points || n > 24) over_budget("too many points for exhaustive partitioning");
    double labelings = 1.0;
    for (std::size_t i = 0; i < n; ++i) labelings *= k;
    if (labelings > budget.max_partitions) over_budget("partition count over budget");

    const std::size_t kk = static_cast<std::size_t>(k);
    std::vector<double> cache(std::size_t{1} << n, -1.0);
    auto measure = [&](std::size_t mask) {
        double& slot = cache[mask];
        if (slot >= 0) return slot;
        PointSet pts;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) pts.push_back(s[i]);
        if (pts.size() < 2)
            slot = 0.0;
        else
            slot = objective.measure == Measure::Diameter ? pair_diameter(plane, pts) : enclosing_ball(plane, pts).radius;
        return slot;
    };
    auto value_of = [&](const std::vector<std::size_t>& masks) {
        double v = 0.0;
        for (auto m : masks) {
            const double x = measure(m);
            if (objective.combiner == Combiner::Max) v = std::max(v, x);
            else if (objective.combiner == Combiner::Sum) v += x;
            else v += x * x;
        }
        return v;
    };

    const auto start = Clock::now();
    std::size_t steps = 0;
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_masks;
    std::vector<std::size_t> masks(kk, 0);
    // Restricted growth: point i opens at most one new cluster.
    auto walk = [&](auto&& self, std::size_t i, std::size_t used) -> void {
        if (i == n) {
            if ((++steps & 0xffff) == 0 && Clock::now() - start > budget.time_cap) over_budget("oracle time cap");
            const double v = value_of(masks);
            if (v < best) {
                best = v;
                best_masks = masks;
            }
            return;
        }
        for (std::size_t c = 0; c < std::min(used + 1, kk); ++c) {
            masks[c] |= std::size_t{1} << i;
            self(self, i + 1, std::max(used, c + 1));
            masks[c] &= ~(std::size_t{1} << i);
        }
    };
    walk(walk, 0, 0);

    ClusterResult r;
    r.value = n == 0 ? 0.0 : best;
    for (std::size_t c = 0; c < kk; ++c) {
        IndexSet idx;
        for (std::size_t i = 0; i < n; ++i)
            if (!best_masks.empty() && (best_masks[c] >> i & 1)) idx.push_back(i);
        r.partition.clusters.push_back(idx);
        r.partition.measures.push_back(best_masks.empty() ? 0.0 : measure(best_masks[c]));
    }
    return r;
}

// ---- center set ----------------------------------------------------------

CenterSet::CenterSet(const NormedPlane& plane, const PointSet& s, double d) : plane_(plane), s_(s), d_(d) {
    if (s.empty()) throw Error(ErrorCode::EmptyInput, "center set of an empty set");
    const double reach = euclid_reach(plane);
    double scale = 1.0;
    for (const auto& p : s) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});

    if (plane.is_polygon()) {
        exact_ = true;
        // n·c >= max_s n·s - d for each edge normal n of the unit polygon.
        const auto& v = plane.polygon_vertices();
        const double big = scale + 4 * (d + 1) * reach;
        PointSet poly{{-big, -big}, {big, -big}, {big, big}, {-big, big}};
        for (std::size_t k = 0; k < v.size() && !poly.empty(); ++k) {
            const Vec e = v[(k + 1) % v.size()] - v[k];
            const Vec nrm = Vec{e.y, -e.x} / cross(v[k], v[(k + 1) % v.size()]);
            double h = -std::numeric_limits<double>::infinity();
            for (const auto& p : s) h = std::max(h, dot(nrm, p));
            const double bound = h - d - 1e-12 * scale;
            PointSet next;
            for (std::size_t i = 0; i < poly.size(); ++i) {
                const Point& a = poly[i];
                const Point& b = poly[(i + 1) % poly.size()];
                const double fa = dot(nrm, a) - bound, fb = dot(nrm, b) - bound;
                if (fa >= 0) next.push_back(a);
                if ((fa >= 0) != (fb >= 0)) next.push_back(a + (b - a) * (fa / (fa - fb)));
            }
            poly = std::move(next);
        }
        if (poly.empty()) throw Error(ErrorCode::NoBallContainsS, "no ball of radius d contains S");
        boundary_ = std::move(poly);
        return;
    }

    const Ball core = enclosing_ball(plane, s);
    if (core.radius > d * (1 + 1e-12) + 1e-15) throw Error(ErrorCode::NoBallContainsS, "no ball of radius d contains S");
    origin_ = core.center;
    const std::size_t count = 2048;
    for (std::size_t i = 0; i < count; ++i) {
        thetas_.push_back(2 * std::numbers::pi * static_cast<double>(i) / count);
        boundary_.push_back(at(thetas_.back()));
    }
    for (std::size_t i = 0; i < count; ++i)
        gap_ = std::max(gap_, plane.gauge(boundary_[(i + 1) % count] - boundary_[i]));
    gap_ *= 2;
}

// Distance from the origin to ∂C along direction theta.
double CenterSet::ray(double theta) const {
    const Vec u{std::cos(theta), std::sin(theta)};
    double lo = 0.0, hi = 2 * d_ * euclid_reach(plane_) + 1e-9;
    for (int i = 0; i < 60; ++i) {
        const double mid = (lo + hi) / 2;
        (farthest_from(plane_, s_, origin_ + u * mid) <= d_ ? lo : hi) = mid;
    }
    return lo;
}

Point CenterSet::at(double theta) const { return origin_ + Vec{std::cos(theta), std::sin(theta)} * ray(theta); }

double CenterSet::farthest(const Point& x) const { return farthest_from(plane_, boundary_, x); }

bool CenterSet::contains(const Point& x, double band) const {
    // S is always inside its own hull, boundary or not.
    if (std::find(s_.begin(), s_.end(), x) != s_.end()) return true;
    const double b = band * std::max(1.0, d_);
    const double v = farthest(x);
    if (v > d_ + b) return false;
    if (exact_) {
        if (v < d_ - b) return true;
        throw Error(ErrorCode::Undecidable, "point within the boundary band");
    }
    if (v + gap_ < d_ - b) return true;

    // Refine around local maxima that could still reach d.
    double best = v;
    const std::size_t m = boundary_.size();
    const double step = thetas_[1] - thetas_[0];
    for (std::size_t i = 0; i < m; ++i) {
        const double here = plane_.gauge(x - boundary_[i]);
        if (here + gap_ < d_ - b) continue;
        if (here < plane_.gauge(x - boundary_[(i + m - 1) % m]) || here < plane_.gauge(x - boundary_[(i + 1) % m]))
            continue;
        const double peak = -golden_min(thetas_[i] - step, thetas_[i] + step,
                                        [&](double t) { return -plane_.gauge(x - at(t)); }, 40);
        best = std::max(best, peak);
    }
    if (best > d_ + b) return false;
    if (best < d_ - b) return true;
    throw Error(ErrorCode::Undecidable, "point within the boundary band");
}

bool bh_membership_oracle(const NormedPlane& plane, const PointSet& s, double d, const Point& x, double band) {
    return CenterSet(plane, s, d).contains(x, band);
}

// ---- separable 2-clustering ----------------------------------------------

std::optional<Partition> exhaustive_separable_2cluster(const NormedPlane& plane, const PointSet& s, double d1,
                                                       double d2, const OracleBudget& budget) {
    const std::size_t n = s.size();
    const double cube = static_cast<double>(n) * n * n;
    if (cube > budget.max_partitions) over_budget("too many points for line enumeration");

    std::optional<Partition> found;
    auto test = [&](const std::vector<char>& left) {
        PointSet l, r;
        IndexSet li, ri;
        for (std::size_t i = 0; i < n; ++i) {
            (left[i] ? l : r).push_back(s[i]);
            (left[i] ? li : ri).push_back(i);
        }
        if (n >= 2 && (l.empty() || r.empty())) return false;
        const double dl = pair_diameter(plane, l), dr = pair_diameter(plane, r);
        if (dl <= d1 && dr <= d2) found = Partition{{li, ri}, {dl, dr}};
        else if (dr <= d1 && dl <= d2) found = Partition{{ri, li}, {dr, dl}};
        return found.has_value();
    };

    std::vector<char> left(n, 1);
    if (test(left)) return found;
    double scale = 1.0;
    for (const auto& p : s) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    const double eps = 1e-9 * scale * scale;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (s[i] == s[j]) continue;
            std::vector<std::size_t> on;
            for (std::size_t t = 0; t < n; ++t) {
                const double det = cross(s[j] - s[i], s[t] - s[i]);
                left[t] = det > eps;
                if (std::abs(det) <= eps) on.push_back(t);
            }
            if (on.size() > 16) over_budget("too many collinear points");
            for (std::size_t bits = 0; bits < (std::size_t{1} << on.size()); ++bits) {
                for (std::size_t b = 0; b < on.size(); ++b) left[on[b]] = bits >> b & 1;
                if (test(left)) return found;
            }
        }
    return std::nullopt;
}

}  // namespace normclust::oracle
