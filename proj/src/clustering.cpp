#include "normclust/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <unordered_map>

#include "normclust/ballhull.hpp"

namespace normclust {

std::string to_string(Combiner c) {
    switch (c) {
        case Combiner::Max: return "max";
        case Combiner::Sum: return "sum";
        case Combiner::SumSquares: return "sumsq";
    }
    return "?";
}

std::string to_string(Measure m) { return m == Measure::Diameter ? "diameter" : "radius"; }

Combiner combiner_from_string(const std::string& name) {
    if (name == "max") return Combiner::Max;
    if (name == "sum") return Combiner::Sum;
    if (name == "sumsq" || name == "sum-squares") return Combiner::SumSquares;
    throw Error(ErrorCode::InvalidInput, "unknown objective '" + name + "'");
}

Measure measure_from_string(const std::string& name) {
    if (name == "diameter") return Measure::Diameter;
    if (name == "radius") return Measure::Radius;
    throw Error(ErrorCode::InvalidInput, "unknown measure '" + name + "'");
}

double combine(Combiner c, const std::vector<double>& measures) {
    double v = 0.0;
    for (double m : measures) {
        switch (c) {
            case Combiner::Max: v = std::max(v, m); break;
            case Combiner::Sum: v += m; break;
            case Combiner::SumSquares: v += m * m; break;
        }
    }
    return v;
}

Basis Basis::standard(const NormedPlane& plane) { return rotated(plane, 0.0); }

Basis Basis::rotated(const NormedPlane& plane, double angle) {
    Basis b;
    b.ex = plane.boundary_point({std::cos(angle), std::sin(angle)});
    b.ey = plane.birkhoff_orthogonal(b.ex);
    return b;
}

Point Basis::coords(const Point& p) const {
    const double det = cross(ex, ey);
    return {cross(p, ey) / det, cross(ex, p) / det};
}

// ---- 2-SAT ---------------------------------------------------------------

void TwoSat::add_clause(std::size_t x, bool vx, std::size_t y, bool vy) {
    graph_[node(x, !vx)].push_back(node(y, vy));
    graph_[node(y, !vy)].push_back(node(x, vx));
}

std::optional<std::vector<bool>> TwoSat::solve() const {
    // Iterative Tarjan; components come out in reverse topological order.
    const std::size_t m = graph_.size();
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(m, kNone), low(m, 0), comp(m, kNone);
    std::vector<std::size_t> stack, call;
    std::vector<std::size_t> edge(m, 0);
    std::vector<char> on_stack(m, 0);
    std::size_t counter = 0, comps = 0;

    for (std::size_t root = 0; root < m; ++root) {
        if (index[root] != kNone) continue;
        call.push_back(root);
        while (!call.empty()) {
            const std::size_t v = call.back();
            if (index[v] == kNone) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            if (edge[v] < graph_[v].size()) {
                const std::size_t w = graph_[v][edge[v]++];
                if (index[w] == kNone) {
                    call.push_back(w);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            call.pop_back();
            if (!call.empty()) low[call.back()] = std::min(low[call.back()], low[v]);
            if (low[v] == index[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = comps;
                } while (w != v);
                ++comps;
            }
        }
    }

    std::vector<bool> value(n_);
    for (std::size_t x = 0; x < n_; ++x) {
        if (comp[node(x, true)] == comp[node(x, false)]) return std::nullopt;
        value[x] = comp[node(x, true)] < comp[node(x, false)];
    }
    return value;
}

// ---- shared helpers ------------------------------------------------------

namespace {

PointSet gather(const PointSet& s, const IndexSet& idx) {
    PointSet out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(s[i]);
    return out;
}

double diam_of(const NormedPlane& plane, const PointSet& pts) {
    if (pts.size() < 2) return 0.0;
    if (pts.size() <= 48) return diameter_bruteforce(plane, pts);
    return diameter(plane, pts).value;
}

double diam_of(const NormedPlane& plane, const PointSet& s, const IndexSet& idx) {
    return diam_of(plane, gather(s, idx));
}

Partition from_labels(const std::vector<int>& label, int k) {
    Partition p;
    p.clusters.resize(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < label.size(); ++i) p.clusters[static_cast<std::size_t>(label[i])].push_back(i);
    return p;
}

Partition from_mask(const std::vector<char>& left) {
    std::vector<int> label(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) label[i] = left[i] ? 0 : 1;
    return from_labels(label, 2);
}

// Every bipartition cut by a line through two points of s, with the points on
// the line split at each position along it (either part to the left).
// `f(left)` returns true to stop.
bool for_each_cut(const PointSet& s, double tol, const std::function<bool(const std::vector<char>&)>& f) {
    const std::size_t n = s.size();
    std::vector<char> left(n, 1);
    if (f(left)) return true;
    std::fill(left.begin(), left.end(), 0);
    if (f(left)) return true;
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || s[i] == s[j]) continue;
            const auto line = OrientedLine::through(s[i], s[j]);
            on.clear();
            for (std::size_t t = 0; t < n; ++t) {
                const Side side = side_of(line, s[t], tol);
                left[t] = side == Side::Left;
                if (side == Side::On) on.push_back(t);
            }
            std::sort(on.begin(), on.end(), [&](std::size_t u, std::size_t v) {
                const double pu = dot(s[u] - s[i], line.direction), pv = dot(s[v] - s[i], line.direction);
                return pu != pv ? pu < pv : u < v;
            });
            if (f(left)) return true;
            for (auto t : on) {
                left[t] = 1;
                if (f(left)) return true;
            }
            // Turning the other way about the same pivot: suffixes go left.
            for (std::size_t t = 0; t + 1 < on.size(); ++t) {
                left[on[t]] = 0;
                if (f(left)) return true;
            }
        }
    }
    return false;
}

// BFS 2-coloring of the graph joining pairs farther apart than d. Isolated
// points and component roots get color 0.
template <class Far>
std::optional<std::vector<int>> two_color(std::size_t n, Far&& far) {
    std::vector<int> color(n, -1);
    std::vector<std::size_t> queue;
    for (std::size_t root = 0; root < n; ++root) {
        if (color[root] != -1) continue;
        color[root] = 0;
        queue.assign(1, root);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::size_t u = queue[head];
            for (std::size_t v = 0; v < n; ++v) {
                if (v == u || !far(u, v)) continue;
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if (color[v] == color[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

constexpr std::size_t kStabbingEdgeLimit = 64;

// Split by a stabbing line of the long-edge segments, when there are few
// enough of them; returns the left side of a split with both diameters <= d.
std::optional<std::vector<char>> stabbing_split(const NormedPlane& plane, const PointSet& s, double d) {
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (plane.dist(s[i], s[j]) > d) {
                if (segs.size() == kStabbingEdgeLimit) return std::nullopt;
                segs.push_back({s[i], s[j]});
            }
    if (segs.empty()) return std::vector<char>(s.size(), 1);
    const auto line = stabbing_line(segs, plane.tolerance());
    if (!line) return std::nullopt;
    for (OnRule rule : {OnRule::ToLeft, OnRule::ToRight}) {
        std::vector<char> left(s.size());
        PointSet l, r;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const Side side = side_of(*line, s[i], plane.tolerance());
            left[i] = side == Side::Left || (side == Side::On && rule == OnRule::ToLeft);
            (left[i] ? l : r).push_back(s[i]);
        }
        if (diam_of(plane, l) <= d && diam_of(plane, r) <= d) return left;
    }
    return std::nullopt;
}

}  // namespace

void measure_partition(const NormedPlane& plane, const PointSet& s, Partition& p, Measure m) {
    p.measures.clear();
    for (const auto& c : p.clusters) {
        if (c.empty()) {
            p.measures.push_back(0.0);
        } else if (m == Measure::Diameter) {
            p.measures.push_back(diam_of(plane, s, c));
        } else {
            p.measures.push_back(min_enclosing_ball(plane, gather(s, c)).radius);
        }
    }
}

// ---- 2-clustering --------------------------------------------------------

std::optional<Partition> feasible_2cluster(const NormedPlane& plane, const PointSet& s, double d) {
    const auto color = two_color(s.size(), [&](std::size_t i, std::size_t j) { return plane.dist(s[i], s[j]) > d; });
    if (!color) return std::nullopt;
    Partition p = from_labels(*color, 2);
    if (const auto left = stabbing_split(plane, s, d)) p = from_mask(*left);
    measure_partition(plane, s, p);
    return p;
}

ClusterResult avis_min_max_2cluster(const NormedPlane& plane, const PointSet& s) {
    if (s.size() < 2) throw Error(ErrorCode::TooFewPoints, "2-clustering needs at least 2 points");
    const std::size_t n = s.size();
    std::vector<double> dist(n * n, 0.0);
    std::vector<double> cand{0.0};
    cand.reserve(n * (n - 1) / 2 + 1);
    for (const auto& pd : sorted_pairwise_distances(plane, s)) {
        dist[pd.i * n + pd.j] = dist[pd.j * n + pd.i] = pd.value;
        cand.push_back(pd.value);
    }
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::size_t lo = 0, hi = cand.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const double d = cand[mid];
        if (two_color(n, [&](std::size_t i, std::size_t j) { return dist[i * n + j] > d; }))
            hi = mid;
        else
            lo = mid + 1;
    }
    auto p = feasible_2cluster(plane, s, cand[lo]);
    return {cand[lo], std::move(*p)};
}

std::optional<Partition> constrained_2cluster(const NormedPlane& plane, const PointSet& s, double d1, double d2) {
    if (!(d2 >= 0.0) || d2 > d1) throw Error(ErrorCode::BadBounds, "constrained 2-clustering needs d1 >= d2 >= 0");

    std::optional<Partition> found;
    auto accept = [&](const std::vector<char>& left) {
        PointSet l, r;
        for (std::size_t i = 0; i < s.size(); ++i) (left[i] ? l : r).push_back(s[i]);
        if (s.size() >= 2 && (l.empty() || r.empty())) return false;
        const double dl = diam_of(plane, l), dr = diam_of(plane, r);
        if (dl <= d1 && dr <= d2) {
            found = from_mask(left);
        } else if (dr <= d1 && dl <= d2) {
            found = from_mask(left);
            std::swap(found->clusters[0], found->clusters[1]);
        } else {
            return false;
        }
        measure_partition(plane, s, *found);
        return true;
    };

    if (const auto left = stabbing_split(plane, s, d1); left && accept(*left)) return found;
    for_each_cut(s, plane.tolerance(), accept);
    return found;
}

// ---- enclosing balls -----------------------------------------------------

namespace {

double radius_from(const NormedPlane& plane, const PointSet& s, const Point& c) {
    double r = 0.0;
    for (const auto& p : s) r = std::max(r, plane.gauge(p - c));
    return r;
}

// min r s.t. r + n_k·c >= h_k for every facet normal; optimum at a vertex
// of three tight constraints.
Ball polygon_ball(const NormedPlane& plane, const PointSet& hull) {
    const auto& normals = plane.facet_normals();
    std::vector<double> h;
    for (const auto& nk : normals) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& v : hull) best = std::max(best, dot(nk, v));
        h.push_back(best);
    }
    const double slack = 1e-12 * std::max(1.0, magnitude(hull));
    Ball best{hull.front(), std::numeric_limits<double>::infinity()};
    const std::size_t k = normals.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            for (std::size_t l = j + 1; l < k; ++l) {
                // Rows [n.x n.y 1] · (cx, cy, r) = h.
                const Vec a = normals[i], b = normals[j], c = normals[l];
                const double det = a.x * (b.y - c.y) - a.y * (b.x - c.x) + (b.x * c.y - c.x * b.y);
                if (std::abs(det) < 1e-14) continue;
                const double hi = h[i], hj = h[j], hl = h[l];
                const double cx = (hi * (b.y - c.y) - a.y * (hj - hl) + (hj * c.y - hl * b.y)) / det;
                const double cy = (a.x * (hj - hl) - hi * (b.x - c.x) + (b.x * hl - c.x * hj)) / det;
                const double r = (a.x * (b.y * hl - c.y * hj) - a.y * (b.x * hl - c.x * hj) + hi * (b.x * c.y - c.x * b.y)) / det;
                bool ok = r < best.radius;
                for (std::size_t t = 0; ok && t < k; ++t) ok = r + dot(normals[t], {cx, cy}) >= h[t] - slack;
                if (ok) best = {{cx, cy}, r};
            }
    return best;
}

std::optional<Point> circumcenter(const Point& a, const Point& b, const Point& c) {
    const Vec ab = b - a, ac = c - a;
    const double det = 2 * cross(ab, ac);
    if (std::abs(det) < 1e-14 * std::max(1.0, dot(ab, ab) + dot(ac, ac))) return std::nullopt;
    const double ab2 = dot(ab, ab), ac2 = dot(ac, ac);
    return a + Vec{(ac.y * ab2 - ab.y * ac2) / det, (ab.x * ac2 - ac.x * ab2) / det};
}

Ball euclidean_ball(const PointSet& hull) {
    const auto e = NormedPlane::euclidean();
    const double slack = 1e-12 * std::max(1.0, magnitude(hull));
    Ball best{hull.front(), std::numeric_limits<double>::infinity()};
    auto consider = [&](const Point& c, double r) {
        if (r >= best.radius) return;
        for (const auto& p : hull)
            if (e.gauge(p - c) > r + slack) return;
        best = {c, r};
    };
    const std::size_t h = hull.size();
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = i + 1; j < h; ++j) {
            const Point m = (hull[i] + hull[j]) * 0.5;
            consider(m, e.gauge(hull[i] - m));
            for (std::size_t k = j + 1; k < h; ++k)
                if (const auto c = circumcenter(hull[i], hull[j], hull[k])) consider(*c, e.gauge(hull[i] - *c));
        }
    return best;
}

// Bisection on r over nonemptiness of the center set.
Ball bisection_ball(const NormedPlane& plane, const PointSet& hull) {
    double hi = diameter(plane, hull).value, lo = hi / 2;
    Point center = hull.front();
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = (lo + hi) / 2;
        try {
            const auto bh = ball_hull(plane, hull, mid);
            Point sum;
            for (const auto& c : bh.centers) sum += c;
            center = sum / static_cast<double>(bh.centers.size());
            hi = mid;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoBallContainsS) throw;
            lo = mid;
        }
    }
    return {center, hi};
}

constexpr std::size_t kBruteBallLimit = 60;

}  // namespace

Ball min_enclosing_ball(const NormedPlane& plane, const PointSet& s) {
    if (s.empty()) throw Error(ErrorCode::EmptyInput, "enclosing ball of an empty set");
    const PointSet hull = convex_hull(s).vertices;
    if (hull.size() == 1) return {hull.front(), 0.0};
    Ball b;
    if (plane.is_polygon())
        b = polygon_ball(plane, hull);
    else if (plane.is_euclidean() && hull.size() <= kBruteBallLimit)
        b = euclidean_ball(hull);
    else
        b = bisection_ball(plane, hull);
    b.radius = radius_from(plane, s, b.center);
    return b;
}

// ---- k-clustering --------------------------------------------------------

namespace {

using Mask = std::uint64_t;

class KClusterSolver {
public:
    KClusterSolver(const NormedPlane& plane, const PointSet& s, Objective objective)
        : plane_(plane), s_(s), objective_(objective), n_(s.size()) {
        dist_.assign(n_ * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j) dist_[i * n_ + j] = dist_[j * n_ + i] = plane.dist(s[i], s[j]);
        for_each_cut(s, plane.tolerance(), [&](const std::vector<char>& left) {
            Mask m = 0;
            for (std::size_t i = 0; i < n_; ++i)
                if (left[i]) m |= Mask{1} << i;
            cuts_.push_back(m);
            return false;
        });
        std::sort(cuts_.begin(), cuts_.end());
        cuts_.erase(std::unique(cuts_.begin(), cuts_.end()), cuts_.end());
    }

    double solve(Mask rem, int k) {
        if (rem == 0) return 0.0;
        if (k == 1) return term(rem);
        auto& memo = memo_[static_cast<std::size_t>(k)];
        if (auto it = memo.find(rem); it != memo.end()) return it->second.first;

        // The cluster holding the lowest remaining point is the intersection
        // of k-1 cuts, one per separating line to the other clusters.
        const Mask low = rem & (~rem + 1);
        std::vector<Mask> local;
        for (Mask c : cuts_)
            if (c & low) local.push_back(c & rem);
        std::sort(local.begin(), local.end());
        local.erase(std::unique(local.begin(), local.end()), local.end());

        std::vector<Mask> firsts;
        std::function<void(std::size_t, Mask, int)> pick = [&](std::size_t from, Mask cur, int left) {
            if (left == 0) {
                firsts.push_back(cur);
                return;
            }
            for (std::size_t i = from; i < local.size(); ++i) pick(i, cur & local[i], left - 1);
        };
        pick(0, rem, k - 1);
        std::sort(firsts.begin(), firsts.end());
        firsts.erase(std::unique(firsts.begin(), firsts.end()), firsts.end());

        double best = std::numeric_limits<double>::infinity();
        Mask choice = rem;
        for (Mask first : firsts) {
            const double rest = solve(rem & ~first, k - 1);
            const double v = reduce(term(first), rest);
            if (v < best) {
                best = v;
                choice = first;
            }
        }
        memo.emplace(rem, std::make_pair(best, choice));
        return best;
    }

    Partition partition(Mask all, int k) {
        Partition p;
        Mask rem = all;
        for (int left = k; left > 1 && rem != 0; --left) {
            solve(rem, left);
            const Mask first = memo_[static_cast<std::size_t>(left)].at(rem).second;
            p.clusters.push_back(indices(first));
            rem &= ~first;
        }
        if (rem != 0) p.clusters.push_back(indices(rem));
        while (p.clusters.size() < static_cast<std::size_t>(k)) p.clusters.emplace_back();
        for (const auto& c : p.clusters) p.measures.push_back(c.empty() ? 0.0 : measure(mask_of(c)));
        return p;
    }

private:
    IndexSet indices(Mask m) const {
        IndexSet out;
        for (std::size_t i = 0; i < n_; ++i)
            if (m >> i & 1) out.push_back(i);
        return out;
    }

    static Mask mask_of(const IndexSet& idx) {
        Mask m = 0;
        for (auto i : idx) m |= Mask{1} << i;
        return m;
    }

    double measure(Mask m) {
        if (auto it = measure_.find(m); it != measure_.end()) return it->second;
        double v = 0.0;
        const auto idx = indices(m);
        if (objective_.measure == Measure::Diameter) {
            for (std::size_t a = 0; a < idx.size(); ++a)
                for (std::size_t b = a + 1; b < idx.size(); ++b) v = std::max(v, dist_[idx[a] * n_ + idx[b]]);
        } else {
            v = min_enclosing_ball(plane_, gather(s_, idx)).radius;
        }
        measure_.emplace(m, v);
        return v;
    }

    double term(Mask m) {
        const double v = measure(m);
        return objective_.combiner == Combiner::SumSquares ? v * v : v;
    }

    double reduce(double a, double b) const { return objective_.combiner == Combiner::Max ? std::max(a, b) : a + b; }

    const NormedPlane& plane_;
    const PointSet& s_;
    Objective objective_;
    std::size_t n_;
    std::vector<double> dist_;
    std::vector<Mask> cuts_;
    std::unordered_map<Mask, double> measure_;
    std::unordered_map<Mask, std::pair<double, Mask>> memo_[5];
};

}  // namespace

ClusterResult k_cluster_minimize(const NormedPlane& plane, const PointSet& s, int k, Objective objective) {
    if (k < 2 || k > 4) throw Error(ErrorCode::InvalidInput, "k must be 2, 3 or 4");
    if (s.size() < static_cast<std::size_t>(k)) throw Error(ErrorCode::TooFewPoints, "fewer points than clusters");
    if (s.size() > 64) throw Error(ErrorCode::InvalidInput, "k-clustering supports at most 64 points");
    KClusterSolver solver(plane, s, objective);
    const Mask all = s.size() == 64 ? ~Mask{0} : (Mask{1} << s.size()) - 1;
    solver.solve(all, k);
    Partition p = solver.partition(all, k);
    return {combine(objective.combiner, p.measures), std::move(p)};
}

// ---- 3-clustering --------------------------------------------------------

namespace {

bool distinct_coords(const PointSet& c) {
    const double eps = 1e-12 * magnitude(c);
    for (int axis = 0; axis < 2; ++axis) {
        std::vector<double> v;
        for (const auto& p : c) v.push_back(axis == 0 ? p.x : p.y);
        std::sort(v.begin(), v.end());
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] - v[i - 1] <= eps) return false;
    }
    return true;
}

Zones zones_from_coords(const PointSet& c, std::size_t a, std::size_t a2, double tol) {
    Zones z;
    z.a = a;
    z.a_prime = a2;
    const double eps = tol * magnitude(c);
    for (std::size_t u = 0; u < c.size(); ++u) {
        if (u == a || u == a2) {
            z.seed.push_back(u);
        } else if (a == a2 || c[u].x > c[a2].x) {
            z.east.push_back(u);
        } else {
            const double t = (c[u].x - c[a].x) / (c[a2].x - c[a].x);
            const double beta = c[u].y - (c[a].y + t * (c[a2].y - c[a].y));
            if (std::abs(beta) <= eps)
                z.seed.push_back(u);
            else
                (beta > 0 ? z.north : z.south).push_back(u);
        }
    }
    return z;
}

class HRSolver {
public:
    HRSolver(const NormedPlane& plane, const PointSet& s, const PointSet& coords, double d, HRStats* stats)
        : plane_(plane), s_(s), c_(coords), d_(d), stats_(stats) {}

    std::optional<Partition> run() {
        const std::size_t n = s_.size();
        std::size_t a = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (c_[i].x < c_[a].x) a = i;
        for (std::size_t a2 = 0; a2 < n; ++a2) {
            if (plane_.dist(s_[a], s_[a2]) > d_) continue;
            if (stats_) ++stats_->a_prime_tried;
            const Zones z = zones_from_coords(c_, a, a2, plane_.tolerance());
            check_lemma(z);
            if (auto p = sided_case(z, z.north, z.south)) {
                if (stats_) ++stats_->case1;
                return p;
            }
            if (auto p = sided_case(z, z.south, z.north)) {
                if (stats_) ++stats_->case2;
                return p;
            }
            if (auto p = third_case(z)) {
                if (stats_) ++stats_->case3;
                return p;
            }
        }
        return std::nullopt;
    }

private:
    bool near(std::size_t u, std::size_t v) const { return plane_.dist(s_[u], s_[v]) <= d_; }
    bool in_lens(const Zones& z, std::size_t u) const { return near(u, z.a) && near(u, z.a_prime); }

    double diam(const IndexSet& idx) const {
        double v = 0.0;
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = i + 1; j < idx.size(); ++j) v = std::max(v, plane_.dist(s_[idx[i]], s_[idx[j]]));
        return v;
    }

    void check_lemma(const Zones& z) {
        if (!stats_) return;
        const double slack = 1e-9 * std::max(1.0, d_);
        for (const IndexSet* zone : {&z.north, &z.south}) {
            IndexSet cand;
            for (auto u : *zone)
                if (in_lens(z, u)) cand.push_back(u);
            ++stats_->lemma_checks;
            if (diam(cand) > d_ + slack) ++stats_->lemma_violations;
        }
    }

    // One whole zone inside A: A is the largest feasible set containing it,
    // and the rest is 2-clustered.
    std::optional<Partition> sided_case(const Zones& z, const IndexSet& inside, const IndexSet& other) const {
        IndexSet a = z.seed;
        a.insert(a.end(), inside.begin(), inside.end());
        if (diam(a) > d_) return std::nullopt;
        const std::size_t core = a.size();
        for (auto u : other) {
            bool ok = true;
            for (std::size_t i = 0; ok && i < core; ++i) ok = near(u, a[i]);
            if (ok) a.push_back(u);
        }
        if (diam(a) > d_) return std::nullopt;
        std::vector<char> in_a(s_.size(), 0);
        for (auto u : a) in_a[u] = 1;
        IndexSet rest;
        for (std::size_t u = 0; u < s_.size(); ++u)
            if (!in_a[u]) rest.push_back(u);
        Partition p;
        p.clusters.push_back(a);
        if (rest.size() <= 1) {
            p.clusters.push_back(rest);
            p.clusters.emplace_back();
            return p;
        }
        const auto two = feasible_2cluster(plane_, gather(s_, rest), d_);
        if (!two) return std::nullopt;
        for (const auto& cl : two->clusters) {
            IndexSet mapped;
            for (auto i : cl) mapped.push_back(rest[i]);
            p.clusters.push_back(mapped);
        }
        return p;
    }

    std::optional<Partition> third_case(const Zones& z) {
        HRState st = state(z);
        std::vector<char> in_b(s_.size(), 0);
        for (auto u : st.b0) in_b[u] = 1;
        for (auto u : st.c0)
            if (in_b[u]) {
                if (stats_) ++stats_->stopped;
                return std::nullopt;
            }

        // Each point gets two admissible clusters (equal when forced); the
        // variable is true for the first.
        enum { A = 0, B = 1, C = 2 };
        const std::size_t n = s_.size();
        std::vector<std::pair<int, int>> dom(n, {-1, -1});
        auto set = [&](const IndexSet& idx, int x, int y) {
            for (auto u : idx) dom[u] = {x, y};
        };
        set(st.a0, A, A);
        set(st.b0, B, B);
        set(st.c0, C, C);
        set(st.ab_cand, A, B);
        set(st.ca_cand, C, A);
        set(st.bc_cand, B, C);

        TwoSat sat(n);
        for (std::size_t u = 0; u < n; ++u)
            if (dom[u].first == dom[u].second) sat.force(u, true);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) {
                if (near(u, v)) continue;
                for (bool ou : {true, false})
                    for (bool ov : {true, false}) {
                        const int cu = ou ? dom[u].first : dom[u].second;
                        const int cv = ov ? dom[v].first : dom[v].second;
                        if (cu == cv) sat.add_clause(u, !ou, v, !ov);
                    }
            }
        const auto value = sat.solve();
        if (!value) return std::nullopt;
        std::vector<int> label(n);
        for (std::size_t u = 0; u < n; ++u) label[u] = (*value)[u] ? dom[u].first : dom[u].second;
        return from_labels(label, 3);
    }

    HRState state(const Zones& z) const {
        HRState st;
        st.d = d_;
        st.a0 = z.seed;
        std::vector<char> high(s_.size(), 0), low(s_.size(), 0);
        for (auto u : z.east)
            for (auto v : z.east)
                if (u != v && !near(u, v)) (c_[u].y > c_[v].y ? high : low)[u] = 1;
        for (auto u : z.north) (in_lens(z, u) ? st.ab_cand : st.b0).push_back(u);
        for (auto u : z.south) (in_lens(z, u) ? st.ca_cand : st.c0).push_back(u);
        for (auto u : z.east) {
            if (high[u]) st.b0.push_back(u);
            if (low[u]) st.c0.push_back(u);
            if (!high[u] && !low[u]) st.bc_cand.push_back(u);
        }
        return st;
    }

    const NormedPlane& plane_;
    const PointSet& s_;
    const PointSet& c_;
    double d_;
    HRStats* stats_;
};

// Smallest gap above the tie tolerance between values of one coordinate.
double min_gap(const PointSet& c, int axis) {
    const double eps = 1e-12 * magnitude(c);
    std::vector<double> v;
    for (const auto& p : c) v.push_back(axis == 0 ? p.x : p.y);
    std::sort(v.begin(), v.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] - v[i - 1] > eps) gap = std::min(gap, v[i] - v[i - 1]);
    return gap;
}

// Coordinates in a randomly rotated basis with pairwise distinct x and y.
// Polygonal norms pin ey to an edge direction, so points aligned with an
// edge tie in x under every rotation; those get a tiny shear that only
// breaks ties (lexicographic order), and the caller re-checks diameters.
PointSet rotated_coords(const NormedPlane& plane, const PointSet& s, std::uint64_t seed, HRStats* stats) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    PointSet first;
    double first_theta = 0.0;
    for (int attempt = 0; attempt < 64; ++attempt) {
        const double theta = angle(rng);
        const Basis basis = Basis::rotated(plane, theta);
        PointSet c;
        for (const auto& p : s) c.push_back(basis.coords(p));
        if (attempt == 0) {
            first = c;
            first_theta = theta;
        }
        if (distinct_coords(c)) {
            if (stats) {
                stats->seed = seed;
                stats->angle = theta;
            }
            return c;
        }
    }
    const double span = 4.0 * std::max(1.0, magnitude(first));
    double gx = min_gap(first, 0), gy = min_gap(first, 1);
    if (!std::isfinite(gx)) gx = span;
    if (!std::isfinite(gy)) gy = span;
    PointSet c;
    for (const auto& p : first) c.push_back({p.x + p.y * 1e-3 * gx / span, p.y - p.x * 1e-3 * gy / span});
    if (!distinct_coords(c)) throw Error(ErrorCode::DegenerateBasis, "no rotation separates the coordinates");
    if (stats) {
        stats->seed = seed;
        stats->angle = first_theta;
        ++stats->sheared;
    }
    return c;
}

}  // namespace

Zones hr_zones(const NormedPlane& plane, const PointSet& s, std::size_t a, std::size_t a_prime, const Basis& basis) {
    if (a >= s.size() || a_prime >= s.size()) throw Error(ErrorCode::InvalidInput, "zone anchor out of range");
    PointSet c;
    for (const auto& p : s) c.push_back(basis.coords(p));
    if (!distinct_coords(c)) throw Error(ErrorCode::DegenerateBasis, "coordinates are not pairwise distinct");
    for (std::size_t i = 0; i < c.size(); ++i)
        if (i != a && c[i].x <= c[a].x) throw Error(ErrorCode::DegenerateBasis, "a is not the leftmost point");
    return zones_from_coords(c, a, a_prime, plane.tolerance());
}

Zones hr_zones(const NormedPlane& plane, const PointSet& s, std::size_t a, std::size_t a_prime) {
    return hr_zones(plane, s, a, a_prime, Basis::standard(plane));
}

std::optional<Partition> hr_feasible_3cluster(const NormedPlane& plane, const PointSet& s, double d,
                                              std::uint64_t seed, HRStats* stats) {
    if (s.size() < 3) throw Error(ErrorCode::TooFewPoints, "3-clustering needs at least 3 points");

    // Coincident points always share a cluster; solve on distinct ones.
    PointSet uniq;
    std::vector<IndexSet> owners;
    {
        std::vector<std::size_t> order(s.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return s[i] < s[j]; });
        for (auto i : order) {
            if (uniq.empty() || !(uniq.back() == s[i])) {
                uniq.push_back(s[i]);
                owners.emplace_back();
            }
            owners.back().push_back(i);
        }
    }

    std::optional<Partition> found;
    if (uniq.size() <= 3) {
        found.emplace();
        for (std::size_t i = 0; i < 3; ++i) found->clusters.push_back(i < uniq.size() ? IndexSet{i} : IndexSet{});
    } else {
        const PointSet coords = rotated_coords(plane, uniq, seed, stats);
        found = HRSolver(plane, uniq, coords, d, stats).run();
    }
    if (!found) return std::nullopt;

    Partition p;
    for (const auto& cl : found->clusters) {
        IndexSet mapped;
        for (auto u : cl) mapped.insert(mapped.end(), owners[u].begin(), owners[u].end());
        std::sort(mapped.begin(), mapped.end());
        p.clusters.push_back(mapped);
    }
    measure_partition(plane, s, p);
    for (double m : p.measures)
        if (m > d) return std::nullopt;
    return p;
}

ClusterResult min_max_3cluster(const NormedPlane& plane, const PointSet& s, std::uint64_t seed, HRStats* stats) {
    if (s.size() < 3) throw Error(ErrorCode::TooFewPoints, "3-clustering needs at least 3 points");
    std::vector<double> cand{0.0};
    for (const auto& pd : sorted_pairwise_distances(plane, s)) cand.push_back(pd.value);
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::size_t lo = 0, hi = cand.size() - 1;
    std::optional<Partition> best = hr_feasible_3cluster(plane, s, cand[hi], seed, stats);
    if (!best) throw Error(ErrorCode::InvalidInput, "3-clustering search failed at the largest distance");
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (auto p = hr_feasible_3cluster(plane, s, cand[mid], seed, stats)) {
            hi = mid;
            best = std::move(p);
        } else {
            lo = mid + 1;
        }
    }
    return {cand[hi], std::move(*best)};
}

}  // namespace normclust
