#pragma once

#include <string>
#include <vector>

#include "normclust/ballhull.hpp"
#include "normclust/geometry.hpp"

namespace normclust::svg {

struct PointLayer {
    PointSet points;
    std::string color = "#1f4e9c";
    std::vector<std::string> labels = {};
};

struct Curve {
    PointSet points;
    std::string color = "#555555";
    bool closed = false;
    /// CSS class on the emitted path ("hull", "sphere", "arc", ...).
    std::string kind = "curve";
};

struct Scene {
    std::vector<PointLayer> layers;
    std::vector<Curve> curves;
    std::vector<OrientedLine> lines;
};

Curve hull_curve(const ConvexPolygon& hull, const std::string& color);
Curve arc_curve(const NormedPlane& plane, const Arc& arc, const std::string& color);
/// The sphere S(center, radius), sampled.
Curve sphere_curve(const NormedPlane& plane, const Point& center, double radius, const std::string& color);

std::string render(const Scene& scene);
/// Throws IOError.
void emit_svg(const Scene& scene, const std::string& path);

}  // namespace normclust::svg
