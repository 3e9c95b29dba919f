// --------------------------------------------------------------------
// Constrained pairs of Bezier curves:
//  - a right-angle crossing pair inside a triangle, outside a quadrilateral
//  - a diagonal-replacing cubic meeting a point at a prescribed slope
// --------------------------------------------------------------------
#ifndef BEZDRAW_CONSTRUCTIONS_HPP
#define BEZDRAW_CONSTRUCTIONS_HPP

#include "bezdraw/geometry.hpp"

namespace bezdraw {

struct OutsidePairResult {
    Point E, F;
    CubicBezier curve_AE;  // endpoints E (t=0) and A (t=1)
    CubicBezier curve_BF;  // endpoints F (t=0) and B (t=1)
    Point crossing;
    double t_cross = 0;
    ConvexPolygon quad_ABEF;      // original frame
    ConvexPolygon triangle_used;  // isosceles triangle the pair lives in
};

struct RightAngleCurveParams {
    double x0 = 0;
    double D1x = 0;
    double C1x = 0;
    Point C1, D1;
    double t0 = 0;
    double r = 0;
};

struct SlopeCurveSpec {
    ConvexPolygon quad;
    Point X;
    double m = 0;   // requested slope in the normalized frame
    double k = 0;   // convex-combination weight
    double t0 = 0;  // parameter where the curve meets X
    CubicBezier result;
};

//! Apex C on the perpendicular bisector of AB such that isosceles ABC is
//! contained in triangle ABD; height 0.9 x the largest admissible height.
Point isosceles_inscribe(Point A, Point B, Point D);

//! Right-angle crossing pair for triangle ABC: quadrilateral ABEF inside
//! the triangle and two cubics (from quadratics) joining A-E and B-F that
//! cross once at a right angle, inside ABC but outside ABEF.
OutsidePairResult outside_pair(Point A, Point B, Point C);

//! Normalized-frame coefficients of the perpendicular-at-X curve. Frame has
//! B=(0,0), A=(1,0); x0 must lie in (0, 8/9); the caller mirrors otherwise.
RightAngleCurveParams right_angle_params(double x0, double r);

//! Cubic f1 with endpoints B (t=0) and A (t=1) crossing the x-axis at
//! (x0, 0) with a vertical tangent at parameter t0.
std::pair<CubicBezier, double> right_angle_curve(double x0, double r);

//! Cubic f2 tracing the segment from B to A monotonically with f2(t0)=(x0,0).
CubicBezier baseline_curve(double x0, double t0);

//! Largest |r| (x 0.9) whose Lemma-1-right bounding quadrilateral fits in
//! target_quad regardless of the sign of r. The quad must contain segment
//! from (0,0) to (1,0) as a diagonal.
double fit_r(const ConvexPolygon &target_quad, double x0, double D1x,
             double C1x);

//! Weight k solving k f1y' = m (k f1x' + (1-k) f2x') at t0 for the pair
//! f1 = right_angle_curve(x0, r), f2 = baseline_curve(x0, t0).
double slope_combination_k(double x0, double r, double m);

//! Diagonal-replacing curve: quad has diagonal verts[0]-verts[2]; X lies
//! strictly between them; m is the requested slope in the frame where the
//! diagonal is horizontal with verts[2] at the origin and verts[0] at (1,0).
SlopeCurveSpec slope_curve(const ConvexPolygon &quad, Point X, double m);

//! The similarity used by slope_curve to normalize the diagonal, exposed so
//! callers can state m in the same frame.
AffineMap diagonal_frame(const ConvexPolygon &quad);

}  // namespace bezdraw

#endif
