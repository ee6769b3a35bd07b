#pragma once

#include "normclust/norm.hpp"

namespace normclust {

/// Four points that admit no separable split into diameters 1.1 and 1 under
/// the two-arc norm with centers (0, ±10) and radius 5√13. r and s lie on the
/// upper arc of S(a, 1); p and q are the points of S(a, 1) ∩ S(b, 1.1).
struct TwoArcCounterexample {
    NormedPlane plane;
    Point a, b, p, q, r, s;

    PointSet points() const { return {p, q, r, s}; }
};

TwoArcCounterexample two_arc_counterexample();

}  // namespace normclust
