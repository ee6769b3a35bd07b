#pragma once

#include <string>

#include "json.hpp"
#include "normclust/norm.hpp"

namespace normclust::io {

using Json = nlohmann::ordered_json;

/// CSV rows "x,y", optional "x,y" header, '#' comments. Throws IOError,
/// InvalidInput.
PointSet read_points(const std::string& path);
void write_points(const std::string& path, const PointSet& pts);

/// "euclidean", "l1", "linf", or a path to a JSON descriptor.
NormedPlane parse_norm(const std::string& arg, double tolerance);
NormedPlane norm_from_json(const Json& j, double tolerance);
Json norm_to_json(const NormedPlane& plane);

Json point_json(const Point& p);
/// "x,y" to a point. Throws InvalidInput.
Point parse_point(const std::string& text);

}  // namespace normclust::io
