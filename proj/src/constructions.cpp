#include "bezdraw/constructions.hpp"

#include <cmath>

namespace bezdraw {

namespace {

constexpr double kFitSafety = 0.9;

void require(bool cond, const char *msg) {
    if (!cond) throw std::domain_error(msg);
}

}  // namespace

Point isosceles_inscribe(Point A, Point B, Point D) {
    double area2 = (B - A).cross(D - A);
    require(std::abs(area2) > kEpsGeom * (dist(A, B) + dist(A, D)),
            "isosceles_inscribe: degenerate triangle");
    // Normalize to A=(0,0), B=(1,0), D above the axis.
    AffineMap to = AffineMap::similarity(A, B, {0, 0}, {1, 0}, area2 < 0);
    Point d = to(D);
    require(d.y > 0, "isosceles_inscribe: normalization failed");
    // Height of the bisector ray x=1/2 before leaving triangle ABD.
    double h = 1e300;
    auto clip = [&](Point p, Point q) {
        // intersection of segment pq with the vertical line x=1/2
        if (std::abs(p.x - q.x) < kEpsDeriv) return;
        double s = (0.5 - p.x) / (q.x - p.x);
        if (s < -kEpsGeom || s > 1 + kEpsGeom) return;
        double y = p.y + s * (q.y - p.y);
        if (y > kEpsGeom) h = std::min(h, y);
    };
    clip({0, 0}, d);
    clip({1, 0}, d);
    if (std::abs(d.x - 0.5) < kEpsDeriv) h = std::min(h, d.y);
    require(h < 1e300 && h > 0, "isosceles_inscribe: no admissible apex");
    return to.inverse()({0.5, 0.9 * h});
}

OutsidePairResult outside_pair(Point A, Point B, Point D) {
    Point Ciso = isosceles_inscribe(A, B, D);
    double area2 = (B - A).cross(Ciso - A);
    AffineMap to = AffineMap::similarity(A, B, {0, 0}, {1, 0}, area2 < 0);
    AffineMap back = to.inverse();
    double cy = to(Ciso).y;
    require(cy > 0, "outside_pair: apex not above the base");

    // Root of the discriminant expression; the "-sqrt" branch is the one
    // that stays inside the triangle (the other exceeds 1).
    double s = std::sqrt(16 * cy * cy * cy * cy + 48 * cy * cy * cy +
                         40 * cy * cy + 12 * cy + 1);
    double ex = 0.25 * (4 * cy * cy + 6 * cy - s + 3);
    if (!(ex > 0.5 && ex < 0.75))
        throw std::runtime_error("outside_pair: construction infeasible");

    Point Cn{0.5, cy};
    Point En{ex, cy / 2}, Fn{1 - ex, cy / 2};
    // g1(t) = A t^2 + 2C t(1-t) + E (1-t)^2, so as a quadratic Bezier the
    // control points run E, C, A; likewise g2 runs F, C, B.
    CubicBezier g1 = elevate({En, Cn, {0, 0}});
    CubicBezier g2 = elevate({Fn, Cn, {1, 0}});

    double q = std::sqrt(4 * cy * cy + 8 * cy + 1);
    double t_cross = (4 * cy + 1 - q) / (6 * cy);
    Point crossing{0.5, (-q + 6 * cy + 1) * (q + 2 * cy - 1) / (24 * cy)};

    OutsidePairResult res;
    res.E = back(En);
    res.F = back(Fn);
    res.curve_AE = apply(back, g1);
    res.curve_BF = apply(back, g2);
    res.crossing = back(crossing);
    res.t_cross = t_cross;
    res.quad_ABEF = ConvexPolygon({A, B, res.E, res.F});
    res.triangle_used = ConvexPolygon({A, B, Ciso});
    return res;
}

RightAngleCurveParams right_angle_params(double x0, double r) {
    // 8/9 itself is admissible (the discriminant root degenerates to zero);
    // beyond it C1 turns complex and the caller must mirror the frame.
    require(x0 > 0 && x0 <= 8.0 / 9.0, "right_angle_curve: x0 outside (0, 8/9]");
    require(r != 0, "right_angle_curve: r must be nonzero");
    RightAngleCurveParams p;
    p.x0 = x0;
    p.r = r;
    p.D1x = x0 + std::cbrt(x0 * x0 - x0 * x0 * x0);
    double disc = 4 * p.D1x - 3 * p.D1x * p.D1x;
    require(disc >= -1e-9, "right_angle_curve: discriminant negative");
    disc = std::max(disc, 0.0);
    p.C1x = 0.5 * (p.D1x - std::sqrt(disc));
    p.D1 = {p.D1x, -r};
    p.C1 = {p.C1x, (1 - 2 * p.C1x + p.D1x) / (2 * p.D1x - p.C1x) * r};
    p.t0 = (p.C1x - 2 * p.D1x) / (-1 + 3 * p.C1x - 3 * p.D1x);
    require(p.t0 > 0 && p.t0 < 1, "right_angle_curve: t0 outside (0,1)");
    return p;
}

std::pair<CubicBezier, double> right_angle_curve(double x0, double r) {
    RightAngleCurveParams p = right_angle_params(x0, r);
    // f1(t) = A t^3 + 3 C1 t^2(1-t) + 3 D1 t(1-t)^2 + B (1-t)^3
    CubicBezier f1{{0, 0}, p.D1, p.C1, {1, 0}};
    return {f1, p.t0};
}

CubicBezier baseline_curve(double x0, double t0) {
    require(t0 > 0 && t0 < 1, "baseline_curve: t0 outside (0,1)");
    double cx = (x0 - t0 * t0 * t0) / (3 * (1 - t0) * t0);
    return {{0, 0}, {cx, 0}, {cx, 0}, {1, 0}};
}

double fit_r(const ConvexPolygon &target_quad, double x0, double D1x,
             double C1x) {
    require(target_quad.contains_point({0, 0}, kEpsGeom) &&
                target_quad.contains_point({1, 0}, kEpsGeom),
            "fit_r: target quadrilateral does not contain segment AB");
    // Apex heights of the Lemma-1-right bounding quadrilateral per unit r:
    // (x0, -r x0/D1x) and (x0, r (1-2C1x+D1x)(x0-1)/((C1x-1)(2D1x-C1x))).
    double h_neg = x0 / D1x;
    double h_pos =
        (1 - 2 * C1x + D1x) * (x0 - 1) / ((C1x - 1) * (2 * D1x - C1x));
    require(h_neg > 0 && h_pos > 0, "fit_r: degenerate bounding heights");
    double up = target_quad.ray_exit({x0, 0}, {0, 1});
    double down = target_quad.ray_exit({x0, 0}, {0, -1});
    require(up > 0 && down > 0, "fit_r: X on the target boundary");
    // Valid for either sign of r.
    double r_pos = std::min(down / h_neg, up / h_pos);
    double r_neg = std::min(up / h_neg, down / h_pos);
    return kFitSafety * std::min(r_pos, r_neg);
}

double slope_combination_k(double x0, double r, double m) {
    RightAngleCurveParams p = right_angle_params(x0, r);
    CubicBezier f1{{0, 0}, p.D1, p.C1, {1, 0}};
    CubicBezier f2 = baseline_curve(x0, p.t0);
    Point d1 = f1.derivative(p.t0);
    double d2x = f2.derivative(p.t0).x;
    double denom = d1.y - m * d1.x + m * d2x;
    require(std::abs(denom) > kEpsDeriv,
            "slope_combination_k: singular slope equation");
    return m * d2x / denom;
}

AffineMap diagonal_frame(const ConvexPolygon &quad) {
    require(quad.verts.size() == 4, "slope_curve: quadrilateral expected");
    return AffineMap::similarity(quad.verts[2], quad.verts[0], {0, 0}, {1, 0});
}

SlopeCurveSpec slope_curve(const ConvexPolygon &quad, Point X, double m) {
    AffineMap to = diagonal_frame(quad);
    Point xn = to(X);
    double x0 = xn.x;
    require(std::abs(xn.y) < 1e-7 * std::max(1.0, std::abs(x0)),
            "slope_curve: X not on the diagonal");
    require(x0 > 1e-9 && x0 < 1 - 1e-9,
            "slope_curve: X coincides with a diagonal endpoint");

    // Mirror the frame when X falls on the A side, so x0 < 8/9 always.
    bool mirrored = x0 >= 8.0 / 9.0;
    AffineMap mirror{-1, 0, 0, 1, 1, 0};  // x -> 1-x
    if (mirrored) {
        to = to.then(mirror);
        x0 = 1 - x0;
        m = -m;
    }

    ConvexPolygon quad_n;
    {
        std::vector<Point> vs;
        for (Point v : quad.verts) vs.push_back(to(v));
        quad_n = ConvexPolygon(vs);
    }

    SlopeCurveSpec spec;
    spec.quad = quad;
    spec.X = X;

    if (m == 0) {
        // Baseline only: the curve stays on the diagonal.
        RightAngleCurveParams p = right_angle_params(x0, 1.0);
        CubicBezier f2 = baseline_curve(x0, p.t0);
        spec.m = 0;
        spec.k = 0;
        spec.t0 = p.t0;
        spec.result = apply(to.inverse(), f2);
        return spec;
    }

    // Pick the sign of r by checking the achieved slope sign numerically.
    RightAngleCurveParams p = right_angle_params(x0, 1.0);
    CubicBezier f1{{0, 0}, p.D1, p.C1, {1, 0}};
    double f1yp = f1.derivative(p.t0).y;
    double want = m > 0 ? 1.0 : -1.0;
    double rsign = (f1yp > 0 ? 1.0 : -1.0) == want ? 1.0 : -1.0;

    double rmag = fit_r(quad_n, x0, p.D1x, p.C1x);
    require(rmag > 0, "slope_curve: no admissible r");
    p = right_angle_params(x0, rsign * rmag);
    f1 = CubicBezier{{0, 0}, p.D1, p.C1, {1, 0}};
    CubicBezier f2 = baseline_curve(x0, p.t0);

    // Solve k f1y' = m (k f1x' + (1-k) f2x') at t0; f1x'(t0) = 0 by the
    // zero-discriminant choice of C1x, but keep the general form.
    double k = slope_combination_k(x0, rsign * rmag, m);
    require(k > -1e-12 && k < 1 + 1e-12, "slope_curve: k outside [0,1]");
    k = std::clamp(k, 0.0, 1.0);

    CubicBezier f3{{0, 0}, k * f1.p1 + (1 - k) * f2.p1,
                   k * f1.p2 + (1 - k) * f2.p2, {1, 0}};

    spec.m = mirrored ? -m : m;
    spec.k = k;
    spec.t0 = p.t0;
    spec.result = apply(to.inverse(), f3);
    return spec;
}

}  // namespace bezdraw
