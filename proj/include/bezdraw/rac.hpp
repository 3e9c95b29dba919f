// --------------------------------------------------------------------
// End-to-end RAC drawing of 1-plane embeddings with one cubic Bezier per
// edge: kite augmentation, separation-pair contraction, convex (Tutte)
// drawing, right-angle crossing insertion, thick-edge expansion.
// --------------------------------------------------------------------
#ifndef BEZDRAW_RAC_HPP
#define BEZDRAW_RAC_HPP

#include <array>
#include <map>
#include <optional>

#include "bezdraw/constructions.hpp"
#include "bezdraw/drawing.hpp"
#include "bezdraw/embedding.hpp"

namespace bezdraw {

//! Kite-complete and triangulate: every crossing enclosed in an empty
//! kite, 2-faces removed, crossed parallel edges removed, every longer
//! face star-triangulated. Added vertices/edges are flagged helpers.
OnePlaneEmbedding augment(const OnePlaneEmbedding &emb);

//! Brute-force separation pair of an abstract multigraph given by
//! adjacency lists (parallel edges fine); smallest pair in lexicographic
//! order, or nullopt when none exists.
std::optional<std::pair<int, int>> find_separation_pair(
    const std::vector<std::vector<int>> &adj);

struct Fragment;

//! A graph in mid-pipeline: planarization, crossing registry, thick-edge
//! registry with the contracted fragments, and the outer face.
struct RacGraph {
    PlanarEmbedding pe;
    std::vector<CrossingPair> pairs;
    int outer_dart = -1;
    std::map<int, int> thick;  // segment id -> fragment index
    std::vector<Fragment> fragments;
};

struct Fragment {
    RacGraph graph;   // shares the parent's vertex id space
    int u = -1, v = -1;
    int seg_straight = -1;  // boundary edge drawn on the thick segment
    int seg_bulge = -1;     // boundary edge drawn around the expansion
    int lens_side = 0;      // dart 2*seg_straight+lens_side faced the lens
};

//! Repeated separation-pair contraction; fragments are extracted (and
//! themselves contracted) until no separation pair remains. The result
//! is asserted simple and 3-connected.
RacGraph contract(OnePlaneEmbedding emb);

//! Tutte barycentric drawing: the outer walk is fixed on the given convex
//! positions (boundary[i] places the tail of outer_walk[i]); interior
//! vertices solve the neighbor-average system. Returns per-vertex-id
//! positions (untouched ids keep (0,0)).
std::vector<Point> tutte_positions(const PlanarEmbedding &H,
                                   const std::vector<int> &outer_walk,
                                   const std::vector<Point> &boundary);

//! Cross-product census: every face strictly convex and consistently
//! oriented, the outer face aside.
bool convex_faces_ok(const PlanarEmbedding &H, const std::vector<Point> &pos,
                     int outer_dart);

struct InsertedPair {
    CubicBezier straight;  // diagonal q[0]-q[2] as a degenerate cubic
    CubicBezier curved;    // diagonal q[1]-q[3], right-angle at the crossing
    Point crossing;
};

//! Draw the two crossing-pair diagonals of a convex quadrilateral given
//! by its corner cycle: one straight, one meeting it at a right angle.
InsertedPair insert_crossing_pair(const std::array<Point, 4> &q);

//! Convex quad polygon with prescribed first vertex and the diagonal
//! convention verts[0]-verts[2].
ConvexPolygon quad_with_diagonal(Point a, Point b, Point c, Point d);

struct RacResult {
    Drawing drawing;          // original vertices and edges only
    Drawing full;             // includes augmentation helpers and dummies
    int augmented_vertices = 0;
    int fragments_drawn = 0;
};

//! The whole Theorem-1 pipeline.
RacResult draw_rac(const OnePlaneEmbedding &emb);

}  // namespace bezdraw

#endif
