#include "bezdraw/verifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace bezdraw {

namespace {

std::string edge_label(const Drawing &d, int i) {
    return "edge " + std::to_string(i) + " (" + std::to_string(d.edges[i].u) +
           "-" + std::to_string(d.edges[i].v) + ")";
}

//! Coarse uniform grid over curve bounding boxes for pair prefiltering.
std::vector<std::pair<int, int>> candidate_pairs(const Drawing &d,
                                                 double margin) {
    int n = int(d.edges.size());
    std::vector<std::pair<int, int>> out;
    if (n == 0) return out;
    Rect world = d.bounds();
    double cell = std::max(world.size() / 32.0, 1e-9);
    std::map<std::pair<int, int>, std::vector<int>> grid;
    std::vector<Rect> boxes(n);
    for (int i = 0; i < n; ++i) {
        boxes[i] = d.edges[i].curve.bbox();
        int x0 = int(std::floor((boxes[i].x0 - world.x0 - margin) / cell));
        int x1 = int(std::floor((boxes[i].x1 - world.x0 + margin) / cell));
        int y0 = int(std::floor((boxes[i].y0 - world.y0 - margin) / cell));
        int y1 = int(std::floor((boxes[i].y1 - world.y0 + margin) / cell));
        for (int x = x0; x <= x1; ++x)
            for (int y = y0; y <= y1; ++y) grid[{x, y}].push_back(i);
    }
    std::set<std::pair<int, int>> seen;
    for (auto &[key, ids] : grid) {
        for (size_t a = 0; a < ids.size(); ++a)
            for (size_t b = a + 1; b < ids.size(); ++b) {
                int i = std::min(ids[a], ids[b]);
                int j = std::max(ids[a], ids[b]);
                if (!boxes[i].overlaps(boxes[j], margin)) continue;
                if (seen.insert({i, j}).second) out.push_back({i, j});
            }
    }
    return out;
}

}  // namespace

Point endpoint_tangent(const DrawnEdge &e, bool at_u) {
    const CubicBezier &c = e.curve;
    if (at_u) {
        for (Point p : {c.p1, c.p2, c.p3})
            if (dist(p, c.p0) > kEpsDeriv) return p - c.p0;
    } else {
        for (Point p : {c.p2, c.p1, c.p0})
            if (dist(p, c.p3) > kEpsDeriv) return p - c.p3;
    }
    return {0, 0};
}

VerificationReport census(const Drawing &d, const VerifyOptions &opt) {
    VerificationReport rep;
    // drawing invariant: curve endpoints coincide with vertex positions
    for (size_t i = 0; i < d.edges.size(); ++i) {
        const DrawnEdge &e = d.edges[i];
        double scale = 1.0 + std::max(dist(e.curve.p0, e.curve.p3), 1.0);
        if (dist(e.curve.p0, d.vertices[e.u]) > 1e-9 * scale ||
            dist(e.curve.p3, d.vertices[e.v]) > 1e-9 * scale)
            rep.violations.push_back(
                {ViolationType::ContainmentBreach,
                 edge_label(d, int(i)) + " does not start and end at its "
                                         "vertex positions"});
    }
    std::vector<uint8_t> declared_found(d.crossings.size(), 0);
    for (auto [i, j] : candidate_pairs(d, opt.tol_intersect)) {
        const DrawnEdge &a = d.edges[i];
        const DrawnEdge &b = d.edges[j];
        IntersectOptions io;
        io.tol = opt.tol_intersect;
        if (a.u == b.u || a.u == b.v) io.exclude_a0 = opt.endpoint_exclusion;
        if (a.v == b.u || a.v == b.v) io.exclude_a1 = opt.endpoint_exclusion;
        if (b.u == a.u || b.u == a.v) io.exclude_b0 = opt.endpoint_exclusion;
        if (b.v == a.u || b.v == a.v) io.exclude_b1 = opt.endpoint_exclusion;
        IntersectResult ir = intersect(a.curve, b.curve, io);
        if (ir.overlap) {
            rep.violations.push_back(
                {ViolationType::OverlappingEdges,
                 edge_label(d, i) + " overlaps " + edge_label(d, j)});
            continue;
        }
        for (const CurveHit &h : ir.hits) {
            FoundCrossing fc;
            fc.e1 = i;
            fc.e2 = j;
            fc.point = h.p;
            fc.angle = crossing_angle(a.curve, h.ta, b.curve, h.tb);
            for (size_t k = 0; k < d.crossings.size(); ++k) {
                const DeclaredCrossing &dc = d.crossings[k];
                if ((dc.e1 == i && dc.e2 == j) || (dc.e1 == j && dc.e2 == i)) {
                    fc.declared = true;
                    declared_found[k] += 1;
                }
            }
            if (!fc.declared)
                rep.violations.push_back(
                    {ViolationType::UnexpectedIntersection,
                     edge_label(d, i) + " meets " + edge_label(d, j) +
                         " at (" + std::to_string(h.p.x) + ", " +
                         std::to_string(h.p.y) + ")"});
            rep.crossings.push_back(fc);
        }
    }
    for (size_t k = 0; k < d.crossings.size(); ++k) {
        if (declared_found[k] == 1) continue;
        rep.violations.push_back(
            {ViolationType::MissingCrossing,
             "declared crossing " + std::to_string(k) + " found " +
                 std::to_string(int(declared_found[k])) + " times"});
    }
    return rep;
}

bool check_rac(VerificationReport &report, double tol_angle) {
    for (const FoundCrossing &fc : report.crossings) {
        if (!fc.declared) continue;  // already flagged by the census
        if (std::abs(fc.angle - M_PI / 2) > tol_angle)
            report.violations.push_back(
                {ViolationType::BadAngle,
                 "crossing of edges " + std::to_string(fc.e1) + "," +
                     std::to_string(fc.e2) + " at angle " +
                     std::to_string(fc.angle)});
    }
    return report.violations.empty();
}

double angular_resolution(const Drawing &d, int v) {
    std::vector<Point> dirs;
    for (const DrawnEdge &e : d.edges) {
        if (e.u == v) dirs.push_back(endpoint_tangent(e, true));
        if (e.v == v) dirs.push_back(endpoint_tangent(e, false));
    }
    if (dirs.size() < 2) return M_PI;
    double best = M_PI;
    for (size_t i = 0; i < dirs.size(); ++i)
        for (size_t j = i + 1; j < dirs.size(); ++j) {
            if (dirs[i].len() < kEpsDeriv || dirs[j].len() < kEpsDeriv)
                return 0.0;
            // full angle between directed tangents, not the acute one
            double ang = std::atan2(std::abs(dirs[i].cross(dirs[j])),
                                    dirs[i].dot(dirs[j]));
            best = std::min(best, ang);
        }
    return best;
}

void verify_resolution(const Drawing &d, VerificationReport &rep,
                       const VerifyOptions &opt) {
    for (int v = 0; v < int(d.vertices.size()); ++v) {
        double r = angular_resolution(d, v);
        rep.min_angular_resolution[v] = r;
        if (opt.min_resolution > 0 && r < opt.min_resolution)
            rep.violations.push_back(
                {ViolationType::ResolutionShortfall,
                 "vertex " + std::to_string(v) + " resolution " +
                     std::to_string(r) + " below " +
                     std::to_string(opt.min_resolution)});
    }
}

double max_curvature(const Drawing &d, int samples,
                     VerificationReport *report) {
    double worst = 0;
    for (size_t ei = 0; ei < d.edges.size(); ++ei) {
        const CubicBezier &c = d.edges[ei].curve;
        if (c.straight(1e-12)) continue;
        double best_t = 0, best_k = -1;
        for (int i = 0; i <= samples; ++i) {
            double t = double(i) / samples;
            auto k = c.curvature(t);
            if (!k) {
                if (t > 0 && t < 1 && report)
                    report->violations.push_back(
                        {ViolationType::InfiniteCurvature,
                         "cusp inside " + edge_label(d, int(ei))});
                continue;
            }
            if (*k > best_k) {
                best_k = *k;
                best_t = t;
            }
        }
        // golden-section refinement around the sampled argmax
        double lo = std::max(0.0, best_t - 1.0 / samples);
        double hi = std::min(1.0, best_t + 1.0 / samples);
        for (int it = 0; it < 60; ++it) {
            double m1 = lo + 0.382 * (hi - lo), m2 = lo + 0.618 * (hi - lo);
            double k1 = c.curvature(m1).value_or(1e300);
            double k2 = c.curvature(m2).value_or(1e300);
            if (k1 > k2)
                hi = m2;
            else
                lo = m1;
        }
        double refined = c.curvature(0.5 * (lo + hi)).value_or(best_k);
        worst = std::max(worst, std::max(best_k, refined));
    }
    return worst;
}

}  // namespace bezdraw
