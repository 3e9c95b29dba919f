// --------------------------------------------------------------------
// Independent numerical certification of drawings: intersection census,
// crossing-angle audit, angular resolution, curvature maxima.
// --------------------------------------------------------------------
#ifndef BEZDRAW_VERIFIER_HPP
#define BEZDRAW_VERIFIER_HPP

#include <map>
#include <string>

#include "bezdraw/drawing.hpp"

namespace bezdraw {

enum class ViolationType {
    UnexpectedIntersection,
    MissingCrossing,
    BadAngle,
    OverlappingEdges,
    ResolutionShortfall,
    ContainmentBreach,
    InfiniteCurvature,
};

struct Violation {
    ViolationType type;
    std::string detail;
};

struct FoundCrossing {
    int e1 = -1, e2 = -1;  // edge indices
    Point point;
    double angle = 0;      // acute crossing angle
    bool declared = false;
};

struct VerificationReport {
    std::vector<FoundCrossing> crossings;
    std::vector<Violation> violations;
    std::map<int, double> min_angular_resolution;  // per vertex
    double max_curvature = 0;
    bool pass() const { return violations.empty(); }
};

struct VerifyOptions {
    double tol_intersect = 1e-9;
    double endpoint_exclusion = 1e-4;  // parameter units
    double tol_angle = 1e-6;           // radians
    int curvature_samples = 1024;
    // angular-resolution floor checked by verify_resolution; 0 disables
    double min_resolution = 0.0;
};

//! Pairwise intersection census with bounding-box grid prefiltering;
//! contacts at shared endpoints are excluded within the parameter radius,
//! everything else is matched against the declared crossings.
VerificationReport census(const Drawing &d, const VerifyOptions &opt = {});

//! RAC verdict on a census: every declared crossing found exactly once at
//! a right angle (within tol), and nothing undeclared.
bool check_rac(VerificationReport &report, double tol_angle);

//! Minimum angle between tangent directions of the curves at vertex v;
//! pi for degree < 2. The tangent at an endpoint points toward the first
//! control point distinct from it.
double angular_resolution(const Drawing &d, int v);

//! Fill per-vertex resolutions into the report, flagging vertices below
//! opt.min_resolution (when set) as resolution shortfalls.
void verify_resolution(const Drawing &d, VerificationReport &rep,
                       const VerifyOptions &opt = {});

//! Max sampled-and-refined curvature over all edges; straight edges
//! contribute zero. Records an InfiniteCurvature violation in report for
//! interior cusps when a report is given.
double max_curvature(const Drawing &d, int samples = 1024,
                     VerificationReport *report = nullptr);

//! Tangent direction of an edge at one of its endpoint vertices.
Point endpoint_tangent(const DrawnEdge &e, bool at_u);

}  // namespace bezdraw

#endif
