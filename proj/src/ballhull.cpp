#include "normclust/ballhull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace normclust {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    return a;
}

double angle_of(const Vec& v) { return std::atan2(v.y, v.x); }

// Boundary of the center set: ccw vertices and the owner (index into the
// deduplicated point list) of the edge leaving each vertex.
struct CenterSet {
    std::vector<Point> vertices;
    std::vector<std::size_t> owners;
};

double scale_of(const PointSet& s, double d) { return std::max({1.0, magnitude(s), d}); }

CenterSet polygon_center_set(const NormedPlane& plane, const PointSet& s, double d) {
    // Slight inflation keeps tangent configurations nonempty; vertex shifts
    // grow like eps / sin(angle between constraints), so keep it small.
    const double eps = 1e-3 * plane.tolerance() * scale_of(s, d);
    double reach = 0.0;
    for (const auto& v : plane.polygon_vertices()) reach = std::max(reach, euclid_norm(v));
    reach = 2.0 * reach * d + 1.0;
    const Point o = s[0];
    std::vector<Point> poly{o + Vec{-reach, -reach}, o + Vec{reach, -reach}, o + Vec{reach, reach}, o + Vec{-reach, reach}};
    std::vector<std::size_t> label(4, kNone);

    for (const Vec& n : plane.facet_normals()) {
        std::size_t owner = 0;
        double h = dot(n, s[0]);
        for (std::size_t i = 1; i < s.size(); ++i)
            if (dot(n, s[i]) > h) {
                h = dot(n, s[i]);
                owner = i;
            }
        // Inside: dot(n, c) >= h - d.
        const double bound = h - d - eps;
        std::vector<Point> next;
        std::vector<std::size_t> next_label;
        for (std::size_t k = 0; k < poly.size(); ++k) {
            const Point p = poly[k], q = poly[(k + 1) % poly.size()];
            const double gp = dot(n, p) - bound, gq = dot(n, q) - bound;
            if (gp >= 0) {
                next.push_back(p);
                next_label.push_back(label[k]);
                if (gq < 0) {
                    next.push_back(p + (q - p) * (gp / (gp - gq)));
                    next_label.push_back(owner);
                }
            } else if (gq >= 0) {
                next.push_back(p + (q - p) * (gp / (gp - gq)));
                next_label.push_back(label[k]);
            }
        }
        poly = std::move(next);
        label = std::move(next_label);
        if (poly.empty()) throw Error(ErrorCode::NoBallContainsS, "no ball of radius d contains the set");

        // Drop zero-length edges.
        const double tiny = 1e-13 * scale_of(s, d);
        for (std::size_t k = 0; poly.size() > 1 && k < poly.size();) {
            const std::size_t nk = (k + 1) % poly.size();
            if (euclid_norm(poly[nk] - poly[k]) <= tiny) {
                label[k] = label[nk];
                poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(nk));
                label.erase(label.begin() + static_cast<std::ptrdiff_t>(nk));
                if (nk < k) --k;
            } else {
                ++k;
            }
        }
    }
    return {poly, label};
}

struct Disk {
    Point center;
    std::size_t owner;
};

struct ArcPiece {
    std::size_t disk;
    double start;
    double span;
};

class DiskRegion {
public:
    DiskRegion(std::vector<Disk> disks, double rho, double eps, double scale)
        : disks_(std::move(disks)), rho_(rho), eps_(eps), tiny_(1e-10 * scale) {
        arcs_.push_back({0, 0.0, kTwoPi});
        for (std::size_t j = 1; j < disks_.size(); ++j) clip(j);
    }

    CenterSet center_set() const {
        CenterSet out;
        for (const auto& a : arcs_) {
            out.vertices.push_back(point(a.disk, a.start));
            out.owners.push_back(disks_[a.disk].owner);
        }
        return out;
    }

private:
    Point point(std::size_t disk, double angle) const {
        return disks_[disk].center + Vec{std::cos(angle), std::sin(angle)} * rho_;
    }

    void clip(std::size_t j) {
        const Point zj = disks_[j].center;
        std::vector<ArcPiece> kept;
        for (const auto& arc : arcs_) {
            const Vec w = zj - disks_[arc.disk].center;
            const double delta = euclid_norm(w);
            if (delta == 0.0) {
                kept.push_back(arc);
                continue;
            }
            // Points of circle k within rho + eps of zj: cos(θ - φ) >= kappa.
            const double kappa = (delta * delta - 2 * rho_ * eps_ - eps_ * eps_) / (2 * rho_ * delta);
            if (kappa <= -1.0) {
                kept.push_back(arc);
                continue;
            }
            if (kappa > 1.0) continue;
            const double gamma = std::acos(kappa);
            const double t0 = wrap_angle(angle_of(w) - gamma - arc.start);
            const double width = 2 * gamma;
            if (t0 + width > kTwoPi) {
                const double e = std::min(t0 + width - kTwoPi, arc.span);
                if (e > 0) kept.push_back({arc.disk, arc.start, e});
            }
            if (t0 < arc.span) kept.push_back({arc.disk, arc.start + t0, std::min(t0 + width, arc.span) - t0});
        }
        if (kept.empty()) throw Error(ErrorCode::NoBallContainsS, "no ball of radius d contains the set");

        std::vector<ArcPiece> next;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            next.push_back(kept[i]);
            const ArcPiece& nx = kept[(i + 1) % kept.size()];
            const Point e = point(kept[i].disk, kept[i].start + kept[i].span);
            const Point f = point(nx.disk, nx.start);
            if (euclid_norm(e - f) > tiny_) {
                const double a0 = wrap_angle(angle_of(e - zj));
                next.push_back({j, a0, wrap_angle(angle_of(f - zj) - a0)});
            }
        }
        arcs_ = merge(std::move(next));
    }

    std::vector<ArcPiece> merge(std::vector<ArcPiece> arcs) const {
        auto contiguous = [&](const ArcPiece& a, const ArcPiece& b) {
            if (a.disk != b.disk) return false;
            const double gap = wrap_angle(b.start - (a.start + a.span));
            return gap < 1e-12 || gap > kTwoPi - 1e-12;
        };
        bool changed = true;
        while (changed && arcs.size() > 1) {
            changed = false;
            for (std::size_t i = 0; i < arcs.size(); ++i) {
                const std::size_t ni = (i + 1) % arcs.size();
                if (contiguous(arcs[i], arcs[ni])) {
                    arcs[i].span = std::min(kTwoPi, arcs[i].span + arcs[ni].span);
                    arcs.erase(arcs.begin() + static_cast<std::ptrdiff_t>(ni));
                    changed = true;
                    break;
                }
            }
        }
        // Vanishing arcs only add near-duplicate vertices.
        if (arcs.size() > 2)
            arcs.erase(std::remove_if(arcs.begin(), arcs.end(), [](const ArcPiece& a) { return a.span < 1e-12; }),
                       arcs.end());
        return arcs;
    }

    std::vector<Disk> disks_;
    double rho_;
    double eps_;
    double tiny_;
    std::vector<ArcPiece> arcs_;
};

CenterSet disk_center_set(const NormedPlane& plane, const PointSet& s, double d) {
    const double scale = scale_of(s, d);
    const Vec h{0.0, plane.arc_center() * d};
    std::vector<Disk> disks;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (h.y == 0.0) {
            disks.push_back({s[i], i});
        } else {
            disks.push_back({s[i] - h, i});
            disks.push_back({s[i] + h, i});
        }
    }
    DiskRegion region(std::move(disks), plane.arc_radius() * d, 1e-3 * plane.tolerance() * scale, scale);
    return region.center_set();
}

bool arc_inside_ball(const NormedPlane& plane, const Arc& arc, const Point& c, double d, double eps) {
    for (const auto& pt : arc.sample(plane, 33))
        if (plane.gauge(pt - c) > d + eps) return false;
    return true;
}

bool arc_is_flat(const NormedPlane& plane, const Arc& arc, double eps) {
    const Vec pq = arc.to - arc.from;
    for (const auto& pt : arc.sample(plane, 33))
        if (std::abs(cross(pq, pt - arc.from)) > eps * std::max(1.0, euclid_norm(pq))) return false;
    return true;
}

}  // namespace

double Arc::sweep() const {
    if (from == to) return 0.0;
    const double a = angle_of(from - center), b = angle_of(to - center);
    return ccw ? wrap_angle(b - a) : wrap_angle(a - b);
}

Point Arc::point_at(const NormedPlane& plane, double t) const {
    if (t <= 0.0) return from;
    if (t >= 1.0) return to;
    const double a = angle_of(from - center) + (ccw ? 1.0 : -1.0) * t * sweep();
    return center + plane.boundary_point({std::cos(a), std::sin(a)}) * radius;
}

std::vector<Point> Arc::sample(const NormedPlane& plane, std::size_t count) const {
    std::vector<Point> out;
    if (count == 0) return out;
    if (count == 1) return {from};
    for (std::size_t i = 0; i < count; ++i) out.push_back(point_at(plane, static_cast<double>(i) / (count - 1)));
    return out;
}

std::vector<Arc> minimal_arcs(const NormedPlane& plane, const Point& p, const Point& q, double d) {
    if (!(d > 0.0)) throw Error(ErrorCode::InvalidInput, "radius must be positive");
    const double eps = plane.tolerance() * std::max({1.0, d, magnitude({p, q})});
    if (plane.gauge(q - p) > 2 * d + eps) throw Error(ErrorCode::TooFarApart, "points farther apart than 2d");
    if (p == q) return {Arc{p - plane.boundary_point({1, 0}) * d, d, p, p, true}};

    std::vector<Point> cands;
    for (const auto& comp : plane.sphere_sphere_intersection(p, q, d).components) {
        cands.push_back(comp.a);
        if (euclid_norm(comp.b - comp.a) > eps) cands.push_back(comp.b);
    }
    if (cands.empty()) throw Error(ErrorCode::TooFarApart, "spheres do not meet");

    std::vector<Arc> arcs;
    const double band = eps * euclid_norm(q - p);
    for (const bool left : {true, false}) {
        std::vector<Point> pool;
        for (const auto& c : cands) {
            const double o = orient(p, q, c);
            if (left ? o >= -band : o <= band) pool.push_back(c);
        }
        if (pool.empty()) continue;
        // Center left of p→q: the arc runs ccw from p to q, bulging right.
        std::optional<Arc> chosen;
        for (const auto& c : pool) {
            const Arc arc{c, d, p, q, left};
            const bool ok = std::all_of(cands.begin(), cands.end(),
                                        [&](const Point& other) { return arc_inside_ball(plane, arc, other, d, 10 * eps); });
            if (ok) {
                chosen = arc;
                break;
            }
        }
        arcs.push_back(chosen ? *chosen : Arc{pool[0], d, p, q, left});
    }
    if (arcs.size() == 2 && arc_is_flat(plane, arcs[0], 10 * eps) && arc_is_flat(plane, arcs[1], 10 * eps)) arcs.pop_back();
    return arcs;
}

BallHull ball_hull(const NormedPlane& plane, const PointSet& s, double d) {
    if (s.empty()) throw Error(ErrorCode::EmptyInput, "ball_hull needs at least one point");
    if (!(d > 0.0)) throw Error(ErrorCode::InvalidInput, "radius must be positive");
    PointSet pts = s;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    BallHull hull;
    hull.d = d;
    if (pts.size() == 1) {
        hull.vertices = pts;
        return hull;
    }
    const CenterSet cs = plane.is_polygon() ? polygon_center_set(plane, pts, d) : disk_center_set(plane, pts, d);
    hull.centers = cs.vertices;

    const std::size_t m = cs.vertices.size();
    std::vector<std::size_t> changes;
    for (std::size_t i = 0; i < m; ++i)
        if (cs.owners[(i + m - 1) % m] != cs.owners[i]) changes.push_back(i);
    if (changes.empty()) {
        hull.vertices = {pts[cs.owners[0]]};
        return hull;
    }
    for (std::size_t k = 0; k < changes.size(); ++k) hull.vertices.push_back(pts[cs.owners[changes[k]]]);
    for (std::size_t k = 0; k < changes.size(); ++k) {
        const std::size_t nk = (k + 1) % changes.size();
        hull.arcs.push_back(Arc{cs.vertices[changes[nk]], d, hull.vertices[k], hull.vertices[nk], true});
    }
    return hull;
}

bool bh_contains(const NormedPlane& plane, const BallHull& hull, const Point& x) {
    if (hull.empty()) return false;
    double scale = std::max({1.0, hull.d, magnitude({x}), magnitude(hull.vertices)});
    const double band = 10 * plane.tolerance() * scale;
    if (hull.vertices.size() == 1) return plane.gauge(x - hull.vertices[0]) <= band;
    for (const auto& c : hull.centers)
        if (plane.gauge(x - c) > hull.d + band) return false;
    return true;
}

BallHullTree::BallHullTree(const NormedPlane& plane, const PointSet& s, double d) : plane_(plane), d_(d) {
    if (s.empty()) throw Error(ErrorCode::EmptyInput, "tree needs at least one point");
    if (!(d > 0.0)) throw Error(ErrorCode::InvalidInput, "radius must be positive");
    leaves_ = s;
    std::sort(leaves_.begin(), leaves_.end());
    while (size_ < leaves_.size()) size_ *= 2;
    live_.assign(leaves_.size(), true);
    live_count_ = leaves_.size();
    nodes_.assign(2 * size_, BallHull{});
    for (std::size_t i = 0; i < leaves_.size(); ++i) nodes_[size_ + i] = BallHull{d, {leaves_[i]}, {}, {}};
    for (std::size_t node = size_ - 1; node >= 1; --node) rebuild(node);
}

void BallHullTree::rebuild(std::size_t node) {
    const BallHull& l = nodes_[2 * node];
    const BallHull& r = nodes_[2 * node + 1];
    if (l.empty() || r.empty()) {
        nodes_[node] = l.empty() ? r : l;
        return;
    }
    PointSet pts = l.vertices;
    pts.insert(pts.end(), r.vertices.begin(), r.vertices.end());
    nodes_[node] = ball_hull(plane_, pts, d_);
}

std::optional<Point> BallHullTree::query_far_point(const Point& u) const {
    // Every vertex of a node hull is a live point below it, and the node is
    // prunable exactly when all of them are within d of u; at the root that
    // decides the whole query.
    const BallHull& root = nodes_[1];
    std::optional<Point> best;
    double best_dist = -1.0;
    for (const auto& v : root.vertices) {
        const double g = plane_.gauge(u - v);
        if (g > best_dist) {
            best_dist = g;
            best = v;
        }
    }
    if (best && best_dist >= d_) return best;
    return std::nullopt;
}

void BallHullTree::delete_point(const Point& p) {
    auto it = std::lower_bound(leaves_.begin(), leaves_.end(), p);
    std::size_t i = static_cast<std::size_t>(it - leaves_.begin());
    while (i < leaves_.size() && leaves_[i] == p && !live_[i]) ++i;
    if (i == leaves_.size() || !(leaves_[i] == p)) throw Error(ErrorCode::NotPresent, "point is not a live leaf");
    live_[i] = false;
    --live_count_;
    std::size_t node = size_ + i;
    nodes_[node] = BallHull{};
    for (node /= 2; node >= 1; node /= 2) rebuild(node);
}

BallHullTree build_tree(const NormedPlane& plane, const PointSet& s, double d) { return BallHullTree(plane, s, d); }

std::optional<Point> query_far_point(const BallHullTree& tree, const Point& u) { return tree.query_far_point(u); }

void delete_point(BallHullTree& tree, const Point& p) { tree.delete_point(p); }

}  // namespace normclust
