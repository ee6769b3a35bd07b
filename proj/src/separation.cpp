#include "normclust/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace normclust {

const char* to_string(SeparationWitness w) {
    switch (w) {
        case SeparationWitness::NoBadPairs: return "NoBadPairs";
        case SeparationWitness::DisjointHulls: return "DisjointHulls";
        case SeparationWitness::GroupSplit: return "GroupSplit";
        case SeparationWitness::CandidateSearch: return "CandidateSearch";
    }
    return "?";
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Clockwise angle of p around o, in [0, 2π).
double cw_angle(const Point& o, const Point& p) {
    double t = -std::atan2(p.y - o.y, p.x - o.x);
    if (t < 0) t += kTwoPi;
    if (t >= kTwoPi) t -= kTwoPi;
    return t;
}

Vec cw_direction(double t) { return {std::cos(-t), std::sin(-t)}; }

// Distance along o + t*w to the boundary of a ccw convex polygon containing o.
double ray_exit(const std::vector<Point>& h, const Point& o, const Vec& w) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < h.size(); ++i) {
        const Vec e = h[(i + 1) % h.size()] - h[i];
        const Vec n{e.y, -e.x};
        const double den = dot(n, w);
        if (den > 0) best = std::min(best, dot(n, h[i] - o) / den);
    }
    return best;
}

std::size_t sector_of(const std::vector<double>& angles, double t) {
    auto it = std::upper_bound(angles.begin(), angles.end(), t);
    if (it == angles.begin()) return angles.size() - 1;
    return static_cast<std::size_t>(it - angles.begin()) - 1;
}

double perimeter_of(const NormedPlane& plane, const PointSet& s) {
    if (s.empty()) return 0.0;
    return norm_perimeter(plane, convex_hull(s));
}

struct Split {
    PointSet big;
    PointSet small;
    OrientedLine line;  // big on the left
};

bool within(double value, double bound) { return value <= bound + 1e-12 * std::max(1.0, bound); }

class Separator {
public:
    Separator(const NormedPlane& plane, const PointSet& big, const PointSet& small)
        : plane_(plane), big_(big), small_(small) {
        d_big_ = diameter_bruteforce(plane, big);
        d_small_ = diameter_bruteforce(plane, small);
    }

    SeparationWitness run(Split& out) {
        if (auto line = separating_line(big_, small_)) {
            out = {big_, small_, *line};
            return SeparationWitness::DisjointHulls;
        }
        if (max_cross() <= d_big_) {
            PointSet all = big_;
            all.insert(all.end(), small_.begin(), small_.end());
            out = {all, {}, *separating_line(all, {})};
            return SeparationWitness::NoBadPairs;
        }
        if (auto s = group_split()) {
            out = std::move(*s);
            return SeparationWitness::GroupSplit;
        }
        out = candidate_search();
        return SeparationWitness::CandidateSearch;
    }

private:
    double max_cross() const {
        double best = 0.0;
        for (const auto& p : big_)
            for (const auto& q : small_) best = std::max(best, plane_.dist(p, q));
        return best;
    }

    bool valid(const PointSet& big, const PointSet& small) const {
        return within(diameter_bruteforce(plane_, big), d_big_) && within(diameter_bruteforce(plane_, small), d_small_);
    }

    std::optional<Split> group_split() const {
        const ConvexPolygon ha = convex_hull(big_), hb = convex_hull(small_);
        if (ha.degenerate() || hb.degenerate()) return std::nullopt;
        const CrossingSequence cs = boundary_crossings(ha, hb);
        if (cs.points.empty()) return std::nullopt;
        std::vector<Piece> pieces;
        try {
            pieces = decompose_pieces(big_, small_, cs);
        } catch (const Error&) {
            return std::nullopt;
        }
        const BadStructure bad = find_bad_structure(plane_, pieces, d_big_);
        const std::size_t total = pieces.size();
        auto position = [&](PieceOwner o, std::size_t idx) { return 2 * idx + (o == PieceOwner::B ? 1 : 0); };
        std::vector<bool> bad_b(total / 2, false);
        for (const auto& r : bad.pairs) bad_b[r.j] = true;

        for (const auto& group : bad.groups.groups_a) {
            const std::size_t ai = group.back();
            const std::size_t pa = position(PieceOwner::A, ai);
            std::optional<std::size_t> first_b, last_partner;
            std::size_t best_offset = 0;
            for (std::size_t step = 1; step < total; ++step) {
                const std::size_t pos = (pa + step) % total;
                if (pos % 2 == 0) continue;
                const std::size_t j = pos / 2;
                if (!first_b && bad_b[j]) first_b = j;
                const bool partner = std::any_of(bad.pairs.begin(), bad.pairs.end(),
                                                 [&](const BadPairRecord& r) { return r.i == ai && r.j == j; });
                if (partner && step >= best_offset) {
                    best_offset = step;
                    last_partner = j;
                }
            }
            if (!first_b || !last_partner) continue;
            const Point u = cs.points[pieces[position(PieceOwner::B, *first_b)].entry];
            const Point v = cs.points[pieces[position(PieceOwner::B, *last_partner)].exit];
            if (u == v) continue;
            OrientedLine line = OrientedLine::through(u, v);

            // Orient so that the B-pieces fall on the right.
            const auto& ref_piece = pieces[position(PieceOwner::B, *first_b)];
            Side ref = Side::On;
            for (const auto& p : ref_piece.points)
                if ((ref = side_of(line, p, plane_.tolerance())) != Side::On) break;
            if (ref == Side::On) continue;
            if (ref == Side::Left) line = line.reversed();

            // Points on L go to A' first. When L runs along a hull edge a bad
            // point can sit on it, so then try the ones outside conv(A), then all.
            for (int rule = 0; rule < 3; ++rule) {
                Split s;
                s.line = line;
                for (const auto* set : {&big_, &small_})
                    for (const auto& p : *set) {
                        const Side side = side_of(line, p, plane_.tolerance());
                        bool to_small = side == Side::Right;
                        if (side == Side::On && rule == 1) to_small = !polygon_contains(ha, p, 0.0);
                        if (side == Side::On && rule == 2) to_small = true;
                        (to_small ? s.small : s.big).push_back(p);
                    }
                if (valid(s.big, s.small)) return s;
            }
        }
        return std::nullopt;
    }

    // Lines through two input points with every prefix/suffix split of the
    // points lying on the line; minimal total perimeter wins.
    Split candidate_search() const {
        PointSet all = big_;
        all.insert(all.end(), small_.begin(), small_.end());
        std::optional<Split> best;
        double best_perimeter = std::numeric_limits<double>::infinity();
        auto consider = [&](PointSet big, PointSet small, const OrientedLine& line) {
            if (!valid(big, small)) return;
            const double per = perimeter_of(plane_, big) + perimeter_of(plane_, small);
            if (per < best_perimeter) {
                best_perimeter = per;
                best = Split{std::move(big), std::move(small), line};
            }
        };
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j) {
                if (all[i] == all[j]) continue;
                for (const OrientedLine line : {OrientedLine::through(all[i], all[j]),
                                                OrientedLine::through(all[j], all[i])}) {
                    PointSet left, right, on;
                    for (const auto& p : all) {
                        switch (side_of(line, p, plane_.tolerance())) {
                            case Side::Left: left.push_back(p); break;
                            case Side::Right: right.push_back(p); break;
                            case Side::On: on.push_back(p); break;
                        }
                    }
                    std::sort(on.begin(), on.end(), [&](const Point& p, const Point& q) {
                        return dot(p - line.anchor, line.direction) < dot(q - line.anchor, line.direction);
                    });
                    for (std::size_t k = 0; k <= on.size(); ++k) {
                        PointSet big = left, small = right;
                        big.insert(big.end(), on.begin(), on.begin() + static_cast<std::ptrdiff_t>(k));
                        small.insert(small.end(), on.begin() + static_cast<std::ptrdiff_t>(k), on.end());
                        consider(std::move(big), std::move(small), line);
                    }
                }
            }
        if (!best) throw Error(ErrorCode::InvalidInput, "no separable split found");
        return *best;
    }

    const NormedPlane& plane_;
    const PointSet& big_;
    const PointSet& small_;
    double d_big_ = 0.0;
    double d_small_ = 0.0;
};

}  // namespace

CrossingSequence boundary_crossings(const ConvexPolygon& conv_a, const ConvexPolygon& conv_b) {
    CrossingSequence out;
    if (conv_a.degenerate() || conv_b.degenerate()) return out;
    const auto& a = conv_a.vertices;
    const auto& b = conv_b.vertices;
    auto opposite = [](double s, double t) { return (s > 0 && t < 0) || (s < 0 && t > 0); };
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Point p0 = a[i], p1 = a[(i + 1) % a.size()];
        for (std::size_t j = 0; j < b.size(); ++j) {
            const Point q0 = b[j], q1 = b[(j + 1) % b.size()];
            const double d1 = orient(q0, q1, p0), d2 = orient(q0, q1, p1);
            const double d3 = orient(p0, p1, q0), d4 = orient(p0, p1, q1);
            if (opposite(d1, d2) && opposite(d3, d4)) out.points.push_back(p0 + (p1 - p0) * (d1 / (d1 - d2)));
        }
    }
    if (out.points.empty()) return out;

    const ConvexPolygon common = convex_intersection(conv_a, conv_b);
    const auto& src = common.vertices.empty() ? out.points : common.vertices;
    Point o{0, 0};
    for (const auto& p : src) o += p;
    out.origin = o / static_cast<double>(src.size());
    std::sort(out.points.begin(), out.points.end(), [&](const Point& p, const Point& q) {
        return cw_angle(out.origin, p) < cw_angle(out.origin, q);
    });
    return out;
}

std::vector<Piece> decompose_pieces(const PointSet& a, const PointSet& b, const CrossingSequence& crossings) {
    const std::size_t m = crossings.points.size();
    if (m == 0) throw Error(ErrorCode::NoOverlap, "hull boundaries do not cross");
    if (m % 2 != 0) throw Error(ErrorCode::InvalidInput, "odd number of boundary crossings");
    const ConvexPolygon ha = convex_hull(a), hb = convex_hull(b);
    const Point o = crossings.origin;

    std::vector<double> angles(m);
    for (std::size_t k = 0; k < m; ++k) angles[k] = cw_angle(o, crossings.points[k]);

    std::vector<PieceOwner> owner(m);
    for (std::size_t k = 0; k < m; ++k) {
        double lo = angles[k], hi = angles[(k + 1) % m];
        if (hi <= lo) hi += kTwoPi;
        const Vec w = cw_direction(0.5 * (lo + hi));
        owner[k] = ray_exit(ha.vertices, o, w) > ray_exit(hb.vertices, o, w) ? PieceOwner::A : PieceOwner::B;
    }
    for (std::size_t k = 0; k < m; ++k)
        if (owner[k] == owner[(k + 1) % m]) throw Error(ErrorCode::InvalidInput, "pieces do not alternate");

    const std::size_t start = owner[0] == PieceOwner::A ? 0 : 1;
    std::vector<std::size_t> sector_to_piece(m);
    std::vector<Piece> pieces;
    std::size_t count_a = 0, count_b = 0;
    for (std::size_t step = 0; step < m; ++step) {
        const std::size_t k = (start + step) % m;
        Piece piece;
        piece.owner = owner[k];
        piece.index = piece.owner == PieceOwner::A ? count_a++ : count_b++;
        piece.entry = k;
        piece.exit = (k + 1) % m;

        const auto& outer = piece.owner == PieceOwner::A ? ha.vertices : hb.vertices;
        const auto& inner = piece.owner == PieceOwner::A ? hb.vertices : ha.vertices;
        auto in_sector = [&](const Point& p) { return sector_of(angles, cw_angle(o, p)) == k; };
        auto by_angle = [&](const Point& p, const Point& q) {
            auto rel = [&](const Point& x) {
                double t = cw_angle(o, x) - angles[k];
                return t < 0 ? t + kTwoPi : t;
            };
            return rel(p) < rel(q);
        };
        std::vector<Point> outer_part, inner_part;
        std::copy_if(outer.begin(), outer.end(), std::back_inserter(outer_part), in_sector);
        std::copy_if(inner.begin(), inner.end(), std::back_inserter(inner_part), in_sector);
        std::sort(outer_part.begin(), outer_part.end(), by_angle);
        std::sort(inner_part.rbegin(), inner_part.rend(), by_angle);
        piece.outline.push_back(crossings.points[piece.entry]);
        piece.outline.insert(piece.outline.end(), outer_part.begin(), outer_part.end());
        piece.outline.push_back(crossings.points[piece.exit]);
        piece.outline.insert(piece.outline.end(), inner_part.begin(), inner_part.end());

        sector_to_piece[k] = pieces.size();
        pieces.push_back(std::move(piece));
    }

    const double eps = 1e-12 * std::max({1.0, magnitude(a), magnitude(b)});
    auto place = [&](const PointSet& pts, const ConvexPolygon& other, PieceOwner who) {
        for (const auto& p : pts) {
            if (polygon_contains(other, p, eps)) continue;
            Piece& piece = pieces[sector_to_piece[sector_of(angles, cw_angle(o, p))]];
            if (piece.owner != who) throw Error(ErrorCode::InvalidInput, "point outside its owner's pieces");
            piece.points.push_back(p);
        }
    };
    place(a, hb, PieceOwner::A);
    place(b, ha, PieceOwner::B);
    return pieces;
}

BadStructure find_bad_structure(const NormedPlane& plane, const std::vector<Piece>& pieces, double diam_a) {
    BadStructure out;
    std::vector<const Piece*> pa, pb;
    for (const auto& p : pieces) (p.owner == PieceOwner::A ? pa : pb).push_back(&p);
    std::vector<bool> bad_a(pa.size(), false), bad_b(pb.size(), false);
    for (std::size_t i = 0; i < pa.size(); ++i)
        for (std::size_t j = 0; j < pb.size(); ++j) {
            BadPairRecord rec{i, j, {}, 0.0};
            for (const auto& x : pa[i]->points)
                for (const auto& y : pb[j]->points) {
                    const double d = plane.dist(x, y);
                    if (d > rec.length) {
                        rec.length = d;
                        rec.witness = {x, y};
                    }
                }
            if (rec.length > diam_a) {
                out.pairs.push_back(rec);
                bad_a[i] = bad_b[j] = true;
            }
        }

    // Bad pieces in cyclic order, cut into maximal single-owner runs.
    std::vector<const Piece*> seq;
    for (const auto& p : pieces)
        if ((p.owner == PieceOwner::A ? bad_a : bad_b)[p.index]) seq.push_back(&p);
    if (seq.empty()) return out;
    std::size_t start = 0;
    while (start < seq.size() && seq[start]->owner == seq[(start + seq.size() - 1) % seq.size()]->owner) ++start;
    if (start == seq.size()) start = 0;
    for (std::size_t step = 0; step < seq.size(); ++step) {
        const Piece* p = seq[(start + step) % seq.size()];
        auto& groups = p->owner == PieceOwner::A ? out.groups.groups_a : out.groups.groups_b;
        const bool fresh = step == 0 || seq[(start + step - 1) % seq.size()]->owner != p->owner;
        if (fresh) groups.emplace_back();
        groups.back().push_back(p->index);
    }
    return out;
}

SeparationResult separate_clusters(const NormedPlane& plane, const PointSet& a, const PointSet& b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyCluster, "both clusters must be nonempty");
    const bool swapped = diameter(plane, b).value > diameter(plane, a).value;
    Separator sep(plane, swapped ? b : a, swapped ? a : b);
    Split split;
    SeparationResult out;
    out.witness = sep.run(split);
    if (swapped) {
        out.a_prime = std::move(split.small);
        out.b_prime = std::move(split.big);
        out.line = split.line.reversed();
    } else {
        out.a_prime = std::move(split.big);
        out.b_prime = std::move(split.small);
        out.line = split.line;
    }
    return out;
}

std::pair<double, double> perimeter_check(const NormedPlane& plane, const PointSet& a, const PointSet& b,
                                          const SeparationResult& result) {
    return {perimeter_of(plane, a) + perimeter_of(plane, b),
            perimeter_of(plane, result.a_prime) + perimeter_of(plane, result.b_prime)};
}

}  // namespace normclust
