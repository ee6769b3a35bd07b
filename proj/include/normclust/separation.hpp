#pragma once

#include <utility>
#include <vector>

#include "normclust/geometry.hpp"

namespace normclust {

/// Points where the hull boundaries cross, clockwise around an interior
/// point of conv(A) ∩ conv(B).
struct CrossingSequence {
    std::vector<Point> points;
    Point origin;
};

enum class PieceOwner { A, B };

/// One connected part of conv(A)\conv(B) or conv(B)\conv(A). The outline is
/// generally not convex. `points` holds the owner's input points in the piece.
struct Piece {
    PieceOwner owner = PieceOwner::A;
    std::size_t index = 0;
    std::vector<Point> outline;
    std::size_t entry = 0;
    std::size_t exit = 0;
    PointSet points;
};

struct BadPairRecord {
    std::size_t i;  // A-piece index
    std::size_t j;  // B-piece index
    Segment witness;
    double length;
};

/// Groups as lists of piece indices (into the per-owner numbering), each in
/// clockwise order.
struct GroupDecomposition {
    std::vector<std::vector<std::size_t>> groups_a;
    std::vector<std::vector<std::size_t>> groups_b;
};

struct BadStructure {
    std::vector<BadPairRecord> pairs;
    GroupDecomposition groups;
};

enum class SeparationWitness { NoBadPairs, DisjointHulls, GroupSplit, CandidateSearch };
const char* to_string(SeparationWitness w);

struct SeparationResult {
    PointSet a_prime;
    PointSet b_prime;
    OrientedLine line;  // a_prime on the closed left side, b_prime on the closed right
    SeparationWitness witness = SeparationWitness::DisjointHulls;
};

/// Transversal crossings of two non-degenerate convex polygons. Empty when
/// the hulls are disjoint or nested.
CrossingSequence boundary_crossings(const ConvexPolygon& conv_a, const ConvexPolygon& conv_b);

/// Alternating pieces in clockwise order starting with an A-piece.
/// Throws NoOverlap for an empty crossing sequence.
std::vector<Piece> decompose_pieces(const PointSet& a, const PointSet& b, const CrossingSequence& crossings);

BadStructure find_bad_structure(const NormedPlane& plane, const std::vector<Piece>& pieces, double diam_a);

/// Throws EmptyCluster.
SeparationResult separate_clusters(const NormedPlane& plane, const PointSet& a, const PointSet& b);

/// (perim conv A + perim conv B, perim conv A' + perim conv B').
std::pair<double, double> perimeter_check(const NormedPlane& plane, const PointSet& a, const PointSet& b,
                                          const SeparationResult& result);

}  // namespace normclust
