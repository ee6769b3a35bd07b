#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace normclust::svg {

namespace {

constexpr double kSize = 600.0;
constexpr double kMargin = 20.0;

struct View {
    double x0 = -1, y0 = -1, x1 = 1, y1 = 1;

    double scale() const { return (kSize - 2 * kMargin) / std::max(x1 - x0, y1 - y0); }
    // y grows downward in SVG.
    Point map(const Point& p) const { return {kMargin + (p.x - x0) * scale(), kSize - kMargin - (p.y - y0) * scale()}; }
};

View bounds(const Scene& scene) {
    PointSet all;
    for (const auto& l : scene.layers) all.insert(all.end(), l.points.begin(), l.points.end());
    for (const auto& c : scene.curves) all.insert(all.end(), c.points.begin(), c.points.end());
    for (const auto& l : scene.lines) all.push_back(l.anchor);
    View v;
    if (all.empty()) return v;
    v.x0 = v.x1 = all[0].x;
    v.y0 = v.y1 = all[0].y;
    for (const auto& p : all) {
        v.x0 = std::min(v.x0, p.x);
        v.x1 = std::max(v.x1, p.x);
        v.y0 = std::min(v.y0, p.y);
        v.y1 = std::max(v.y1, p.y);
    }
    const double pad = 0.05 * std::max({v.x1 - v.x0, v.y1 - v.y0, 1e-6});
    v.x0 -= pad, v.x1 += pad, v.y0 -= pad, v.y1 += pad;
    return v;
}

// Clip the infinite line to the view box.
std::optional<std::pair<Point, Point>> clip(const OrientedLine& l, const View& v) {
    std::vector<Point> hits;
    const Vec d = l.direction;
    auto add = [&](double t) {
        const Point p = l.anchor + d * t;
        if (p.x >= v.x0 - 1e-9 && p.x <= v.x1 + 1e-9 && p.y >= v.y0 - 1e-9 && p.y <= v.y1 + 1e-9) hits.push_back(p);
    };
    if (d.x != 0) {
        add((v.x0 - l.anchor.x) / d.x);
        add((v.x1 - l.anchor.x) / d.x);
    }
    if (d.y != 0) {
        add((v.y0 - l.anchor.y) / d.y);
        add((v.y1 - l.anchor.y) / d.y);
    }
    if (hits.size() < 2) return std::nullopt;
    auto [lo, hi] = std::minmax_element(hits.begin(), hits.end(),
                                        [&](const Point& a, const Point& b) { return dot(a, d) < dot(b, d); });
    return std::make_pair(*lo, *hi);
}

}  // namespace

Curve hull_curve(const ConvexPolygon& hull, const std::string& color) {
    return {hull.vertices, color, true, "hull"};
}

Curve arc_curve(const NormedPlane& plane, const Arc& arc, const std::string& color) {
    return {arc.sample(plane, 48), color, false, "arc"};
}

Curve sphere_curve(const NormedPlane& plane, const Point& center, double radius, const std::string& color) {
    Curve c{{}, color, true, "sphere"};
    for (int i = 0; i < 256; ++i) {
        const double t = 2 * std::numbers::pi * i / 256;
        c.points.push_back(center + plane.boundary_point({std::cos(t), std::sin(t)}) * radius);
    }
    return c;
}

std::string render(const Scene& scene) {
    const View v = bounds(scene);
    std::ostringstream out;
    out.precision(6);
    out << std::fixed;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
        << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& c : scene.curves) {
        if (c.points.empty()) continue;
        out << "<path class=\"" << c.kind << "\" fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.5\" d=\"";
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            const Point p = v.map(c.points[i]);
            out << (i ? " L" : "M") << p.x << ' ' << p.y;
        }
        out << (c.closed ? " Z" : "") << "\"/>\n";
    }
    for (const auto& l : scene.lines) {
        const auto seg = clip(l, v);
        if (!seg) continue;
        const Point a = v.map(seg->first), b = v.map(seg->second);
        out << "<line class=\"separator\" x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\"" << b.y
            << "\" stroke=\"#c0392b\" stroke-dasharray=\"6 4\"/>\n";
    }
    for (const auto& layer : scene.layers) {
        for (std::size_t i = 0; i < layer.points.size(); ++i) {
            const Point p = v.map(layer.points[i]);
            out << "<circle class=\"point\" cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"3\" fill=\"" << layer.color
                << "\"/>\n";
            if (i < layer.labels.size())
                out << "<text x=\"" << p.x + 5 << "\" y=\"" << p.y - 5 << "\" font-size=\"12\">" << layer.labels[i]
                    << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

void emit_svg(const Scene& scene, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IOError, "cannot write " + path);
    out << render(scene);
    if (!out) throw Error(ErrorCode::IOError, "write failed: " + path);
}

}  // namespace normclust::svg
