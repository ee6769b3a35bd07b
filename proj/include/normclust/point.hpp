#pragma once

#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace normclust {

/// A point (or free vector) of the real plane.
struct Point {
    double x = 0.0;
    double y = 0.0;

    constexpr Point() = default;
    constexpr Point(double x_, double y_) : x(x_), y(y_) {}

    constexpr Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    constexpr Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    constexpr Point operator-() const { return {-x, -y}; }
    constexpr Point operator*(double s) const { return {x * s, y * s}; }
    constexpr Point operator/(double s) const { return {x / s, y / s}; }
    Point& operator+=(const Point& o) { x += o.x; y += o.y; return *this; }
    Point& operator-=(const Point& o) { x -= o.x; y -= o.y; return *this; }

    constexpr bool operator==(const Point&) const = default;
    constexpr auto operator<=>(const Point&) const = default;
};

constexpr Point operator*(double s, const Point& p) { return p * s; }

using Vec = Point;
using PointSet = std::vector<Point>;

constexpr double dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }
inline double euclid_norm(const Vec& v) { return std::hypot(v.x, v.y); }
/// Counterclockwise quarter turn.
constexpr Vec perp(const Vec& v) { return {-v.y, v.x}; }
/// Orientation determinant of (a, b, c); positive when c is left of a->b.
constexpr double orient(const Point& a, const Point& b, const Point& c) { return cross(b - a, c - a); }
inline bool is_finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Largest absolute coordinate in a set, at least 1. Used to scale tolerances.
double magnitude(const PointSet& pts);

struct Segment {
    Point a;
    Point b;
};

enum class ErrorCode {
    NotSymmetric,
    NotConvex,
    OriginNotInterior,
    DegenerateBody,
    ZeroDirection,
    EmptyInput,
    TooFewPoints,
    NoOverlap,
    EmptyCluster,
    TooFarApart,
    NoBallContainsS,
    NotPresent,
    BadBounds,
    DegenerateBasis,
    BudgetExceeded,
    Undecidable,
    InvalidInput,
    IOError,
};

const char* to_string(ErrorCode code);

/// Exception carrying one of the library's error codes.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace normclust
