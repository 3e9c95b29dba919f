// --------------------------------------------------------------------
// Planar drawing with one cubic Bezier per edge from joint-box layouts:
// each edge of a one-bend layout is replaced by the gamma curve, keeping
// planarity, Theta(1/degree) angular resolution and O(sqrt(n)) curvature.
// --------------------------------------------------------------------
#ifndef BEZDRAW_JOINTBOX_HPP
#define BEZDRAW_JOINTBOX_HPP

#include <string>

#include "bezdraw/drawing.hpp"

namespace bezdraw {

enum class PortRegion : uint8_t { L, R, MLeft, MRight };
enum class FreeRegion : uint8_t { L, R, M };

struct JointBoxEdge {
    int a = -1;  // port endpoint
    PortRegion port_region = PortRegion::R;
    int port_index = 1;  // 1..degree(a)
    int b = -1;  // free endpoint
    FreeRegion free_region = FreeRegion::L;
    Point bend;  // bend point of the one-bend layout
};

//! One-bend layout input: integer grid positions plus per-edge port data.
//! Joint boxes are diamonds of width and height 4*degree(v)+4.
struct JointBoxDrawing {
    std::vector<Point> positions;
    std::vector<JointBoxEdge> edges;

    int degree(int v) const;
    //! Enforces every structural invariant; throws StructureError.
    void validate() const;
};

struct EdgeCurveParams {
    double b1 = 0, b2 = 0;  // far endpoint in the normalized frame
    double s = 0;           // b2/b1
    int i = 1, d = 1;
    double k = 0;           // i/(d+1)
    Point Q, P;
};

//! Similarity mapping the port endpoint to the origin and the port region
//! onto the canonical R frame (ports at (d+1,d+1)+(i,-i)); the far
//! endpoint must land in the wedge 0 <= y < x-1.
AffineMap normalize_edge(const JointBoxEdge &e, const JointBoxDrawing &jbd);

//! gamma(t) = B t^3 + 3P t^2(1-t) + 3P t(1-t)^2 with the repeated control
//! point P = (1-k)(1,1) + k Q, Q = (1-s)(1,0) + s(3/2,1/2).
CubicBezier gamma_curve(double b1, double b2, int i, int d);

//! Same curve from raw parameters, unrestricted domain (used by the
//! curvature-bound sweeps where s and k range over all of [0,1]).
CubicBezier gamma_from_params(double b1, double s, double k);

EdgeCurveParams edge_curve_params(double b1, double b2, int i, int d);

//! Replace every one-bend edge by its gamma curve.
Drawing draw_planar(const JointBoxDrawing &jbd);

//! Hand-built layouts standing in for one-bend layout output:
//! "single-edge", "two-boxes", "star-<d>", "wheel-8".
JointBoxDrawing make_fixture(const std::string &name);

//! All shipped fixture names.
std::vector<std::string> fixture_names();

}  // namespace bezdraw

#endif
