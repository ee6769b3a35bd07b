#include "normclust/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace normclust {

std::vector<std::size_t> convex_hull_indices(const PointSet& points) {
    if (points.empty()) throw Error(ErrorCode::EmptyInput, "convex_hull needs at least one point");
    std::vector<std::size_t> idx(points.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return points[a] < points[b] || (points[a] == points[b] && a < b);
    });
    idx.erase(std::unique(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return points[a] == points[b]; }),
              idx.end());
    if (idx.size() <= 2) return idx;

    std::vector<std::size_t> hull(2 * idx.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        while (k >= 2 && orient(points[hull[k - 2]], points[hull[k - 1]], points[idx[i]]) <= 0) --k;
        hull[k++] = idx[i];
    }
    for (std::size_t i = idx.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && orient(points[hull[k - 2]], points[hull[k - 1]], points[idx[i]]) <= 0) --k;
        hull[k++] = idx[i];
    }
    hull.resize(k - 1);
    return hull;
}

ConvexPolygon convex_hull(const PointSet& points) {
    ConvexPolygon poly;
    for (std::size_t i : convex_hull_indices(points)) poly.vertices.push_back(points[i]);
    return poly;
}

DiameterResult diameter(const NormedPlane& plane, const PointSet& points) {
    const ConvexPolygon hull = convex_hull(points);
    const auto& h = hull.vertices;
    DiameterResult best{0.0, {h[0], h[0]}};
    auto consider = [&](const Point& a, const Point& b) {
        const double d = plane.dist(a, b);
        if (d > best.value) best = {d, {a, b}};
    };
    const std::size_t m = h.size();
    if (m == 2) consider(h[0], h[1]);
    if (m < 3) return best;

    auto area = [&](std::size_t i, std::size_t j, std::size_t k) { return std::abs(orient(h[i], h[j], h[k])); };
    std::size_t j = 1;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t ni = (i + 1) % m;
        while (area(i, ni, (j + 1) % m) > area(i, ni, j)) j = (j + 1) % m;
        consider(h[i], h[j]);
        consider(h[ni], h[j]);
        // Parallel edges: the next vertex is antipodal as well.
        const std::size_t nj = (j + 1) % m;
        consider(h[i], h[nj]);
        consider(h[ni], h[nj]);
    }
    return best;
}

double diameter_bruteforce(const NormedPlane& plane, const PointSet& points) {
    double best = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) best = std::max(best, plane.dist(points[i], points[j]));
    return best;
}

double norm_perimeter(const NormedPlane& plane, const ConvexPolygon& polygon) {
    const auto& v = polygon.vertices;
    if (v.size() < 2) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) total += plane.gauge(v[(i + 1) % v.size()] - v[i]);
    return total;
}

double polygon_area(const ConvexPolygon& polygon) {
    const auto& v = polygon.vertices;
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * a;
}

bool polygon_contains(const ConvexPolygon& polygon, const Point& p, double eps) {
    const auto& v = polygon.vertices;
    if (v.empty()) return false;
    if (v.size() == 1) return euclid_norm(p - v[0]) <= eps;
    if (v.size() == 2) {
        const Vec ab = v[1] - v[0];
        const double t = std::clamp(dot(p - v[0], ab) / dot(ab, ab), 0.0, 1.0);
        return euclid_norm(p - (v[0] + ab * t)) <= eps;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec e = v[(i + 1) % v.size()] - v[i];
        if (cross(e, p - v[i]) < -eps * euclid_norm(e)) return false;
    }
    return true;
}

Side side_of(const OrientedLine& line, const Point& p, double tol) {
    const Vec rel = p - line.anchor;
    const double c = cross(line.direction, rel);
    const double band = tol * euclid_norm(line.direction) * std::max(1.0, euclid_norm(rel));
    if (c > band) return Side::Left;
    if (c < -band) return Side::Right;
    return Side::On;
}

bool line_meets_segment(const OrientedLine& line, const Segment& s, double tol) {
    const Side a = side_of(line, s.a, tol);
    const Side b = side_of(line, s.b, tol);
    return !(a == b && a != Side::On);
}

std::optional<OrientedLine> stabbing_line(const std::vector<Segment>& segments, double tol) {
    if (segments.empty()) return OrientedLine{{0, 0}, {1, 0}};
    PointSet ends;
    for (const auto& s : segments) {
        ends.push_back(s.a);
        ends.push_back(s.b);
    }
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    if (ends.size() == 1) return OrientedLine{ends[0], {1, 0}};

    auto stabs_all = [&](const OrientedLine& line) {
        return std::all_of(segments.begin(), segments.end(),
                           [&](const Segment& s) { return line_meets_segment(line, s, tol); });
    };
    for (std::size_t i = 0; i < ends.size(); ++i)
        for (std::size_t j = i + 1; j < ends.size(); ++j) {
            const auto line = OrientedLine::through(ends[i], ends[j]);
            if (stabs_all(line)) return line;
        }
    for (const auto& e : ends)
        for (const auto& s : segments) {
            if (s.a == s.b) continue;
            const OrientedLine line{e, s.b - s.a};
            if (stabs_all(line)) return line;
        }
    return std::nullopt;
}

LineSplit split_by_line(const PointSet& points, const OrientedLine& line, OnRule rule, double tol) {
    LineSplit out;
    for (const auto& p : points) {
        const Side s = side_of(line, p, tol);
        const bool left = s == Side::Left || (s == Side::On && rule == OnRule::ToLeft);
        (left ? out.left : out.right).push_back(p);
    }
    return out;
}

std::vector<PairDistance> sorted_pairwise_distances(const NormedPlane& plane, const PointSet& points) {
    if (points.size() < 2) throw Error(ErrorCode::TooFewPoints, "need at least two points");
    std::vector<PairDistance> out;
    out.reserve(points.size() * (points.size() - 1) / 2);
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) out.push_back({plane.dist(points[i], points[j]), i, j});
    std::sort(out.begin(), out.end(), [](const PairDistance& a, const PairDistance& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    return out;
}

namespace {

OrientedLine tangent_line(const PointSet& pts) {
    const ConvexPolygon hull = convex_hull(pts);
    if (hull.size() == 1) return {hull.vertices[0], {1, 0}};
    return OrientedLine::through(hull.vertices[0], hull.vertices[1]);
}

}  // namespace

std::optional<OrientedLine> separating_line(const PointSet& first, const PointSet& second, double tol) {
    if (first.empty() && second.empty()) return OrientedLine{{0, 0}, {1, 0}};
    if (second.empty()) return tangent_line(first);
    if (first.empty()) return tangent_line(second).reversed();

    const auto hf = convex_hull(first).vertices;
    const auto hs = convex_hull(second).vertices;
    std::vector<Vec> normals;
    auto add_edges = [&](const std::vector<Point>& h) {
        for (std::size_t i = 0; i < h.size() && h.size() >= 2; ++i) normals.push_back(perp(h[(i + 1) % h.size()] - h[i]));
    };
    add_edges(hf);
    add_edges(hs);
    if (hf.size() <= 2 || hs.size() <= 2) {
        for (const auto& a : hf)
            for (const auto& b : hs) {
                normals.push_back(b - a);
                normals.push_back(perp(b - a));
            }
        if (hf.size() == 2) normals.push_back(hf[1] - hf[0]);
        if (hs.size() == 2) normals.push_back(hs[1] - hs[0]);
    }
    const double scale = std::max(magnitude(hf), magnitude(hs));
    for (Vec n : normals) {
        const double len = euclid_norm(n);
        if (len == 0.0) continue;
        n = n / len;
        for (int sign : {1, -1}) {
            const Vec m = n * sign;
            double max_first = -1e300, min_second = 1e300;
            for (const auto& p : hf) max_first = std::max(max_first, dot(m, p));
            for (const auto& p : hs) min_second = std::min(min_second, dot(m, p));
            if (max_first <= min_second + tol * scale) {
                const double c = 0.5 * (max_first + min_second);
                return OrientedLine{m * c, perp(m)};
            }
        }
    }
    return std::nullopt;
}

ConvexPolygon convex_intersection(const ConvexPolygon& a, const ConvexPolygon& b) {
    std::vector<Point> poly = a.vertices;
    const auto& clip = b.vertices;
    for (std::size_t i = 0; i < clip.size() && !poly.empty(); ++i) {
        const Point c0 = clip[i], c1 = clip[(i + 1) % clip.size()];
        std::vector<Point> next;
        for (std::size_t k = 0; k < poly.size(); ++k) {
            const Point p = poly[k], q = poly[(k + 1) % poly.size()];
            const double sp = orient(c0, c1, p), sq = orient(c0, c1, q);
            if (sp >= 0) next.push_back(p);
            if ((sp >= 0) != (sq >= 0)) next.push_back(p + (q - p) * (sp / (sp - sq)));
        }
        poly = std::move(next);
    }
    if (poly.empty()) return {};
    return convex_hull(poly);
}

}  // namespace normclust
