#include "io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace normclust::io {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double parse_number(const std::string& text, const std::string& where) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
        throw Error(ErrorCode::InvalidInput, where + ": bad number '" + t + "'");
    return v;
}

}  // namespace

Point parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::InvalidInput, "expected x,y but got '" + text + "'");
    return {parse_number(text.substr(0, comma), "point"), parse_number(text.substr(comma + 1), "point")};
}

PointSet read_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IOError, "cannot open " + path);
    PointSet pts;
    std::string line;
    for (int row = 1; std::getline(in, line); ++row) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (pts.empty() && (line == "x,y" || line == "X,Y")) continue;
        try {
            pts.push_back(parse_point(line));
        } catch (const Error& e) {
            throw Error(ErrorCode::InvalidInput, path + ":" + std::to_string(row) + ": " + e.what());
        }
    }
    if (pts.empty()) throw Error(ErrorCode::InvalidInput, path + ": no points");
    return pts;
}

void write_points(const std::string& path, const PointSet& pts) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IOError, "cannot write " + path);
    out.precision(17);
    out << "x,y\n";
    for (const auto& p : pts) out << p.x << ',' << p.y << '\n';
}

NormedPlane norm_from_json(const Json& j, double tolerance) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "euclidean") return validate_norm(EuclideanBall{}, tolerance);
        if (kind == "polygon") {
            PolygonBall ball;
            for (const auto& v : j.at("vertices")) ball.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
            return validate_norm(ball, tolerance);
        }
        if (kind == "two_arc")
            return validate_norm(TwoArcBall{j.at("center").get<double>(), j.at("radius").get<double>()}, tolerance);
        throw Error(ErrorCode::InvalidInput, "unknown norm kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidInput, std::string("norm descriptor: ") + e.what());
    }
}

NormedPlane parse_norm(const std::string& arg, double tolerance) {
    if (arg == "euclidean") return validate_norm(EuclideanBall{}, tolerance);
    if (arg == "l1") return validate_norm(NormedPlane::l1().descriptor(), tolerance);
    if (arg == "linf") return validate_norm(NormedPlane::linf().descriptor(), tolerance);
    std::ifstream in(arg);
    if (!in) throw Error(ErrorCode::IOError, "cannot open norm file " + arg);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidInput, arg + ": " + e.what());
    }
    return norm_from_json(j, tolerance);
}

Json point_json(const Point& p) { return Json::array({p.x, p.y}); }

Json norm_to_json(const NormedPlane& plane) {
    Json j;
    const auto& d = plane.descriptor();
    if (std::holds_alternative<EuclideanBall>(d)) {
        j["kind"] = "euclidean";
    } else if (const auto* poly = std::get_if<PolygonBall>(&d)) {
        j["kind"] = "polygon";
        j["vertices"] = Json::array();
        for (const auto& v : poly->vertices) j["vertices"].push_back(point_json(v));
    } else {
        const auto& arc = std::get<TwoArcBall>(d);
        j["kind"] = "two_arc";
        j["center"] = arc.center;
        j["radius"] = arc.radius;
    }
    return j;
}

}  // namespace normclust::io
