#include "bezdraw/geometry.hpp"

#include <algorithm>
#include <cstdlib>

namespace bezdraw {

Point Point::normalized() const {
    double l = len();
    if (l == 0.0) return {1, 0};
    return {x / l, y / l};
}

double acute_angle(Point u, Point v) {
    if (u.len() < kEpsDeriv || v.len() < kEpsDeriv)
        throw std::domain_error("acute_angle: degenerate direction");
    return std::atan2(std::abs(u.cross(v)), std::abs(u.dot(v)));
}

void Rect::add(Point p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
}

bool Rect::overlaps(const Rect &o, double margin) const {
    return x0 <= o.x1 + margin && o.x0 <= x1 + margin && y0 <= o.y1 + margin &&
           o.y0 <= y1 + margin;
}

// --------------------------------------------------------------------

AffineMap AffineMap::inverse() const {
    double dt = det();
    if (std::abs(dt) < kEpsDeriv * kEpsDeriv)
        throw std::domain_error("AffineMap::inverse: singular map");
    double ia = d / dt, ib = -b / dt, ic = -c / dt, id = a / dt;
    return {ia, ib, ic, id, -(ia * tx + ib * ty), -(ic * tx + id * ty)};
}

AffineMap AffineMap::then(const AffineMap &n) const {
    return {n.a * a + n.b * c, n.a * b + n.b * d,
            n.c * a + n.d * c, n.c * b + n.d * d,
            n.a * tx + n.b * ty + n.tx, n.c * tx + n.d * ty + n.ty};
}

bool AffineMap::angle_preserving(double eps) const {
    double s1 = a * a + c * c, s2 = b * b + d * d;
    double scale = std::max(s1, s2);
    if (scale < kEpsDeriv) return false;
    return std::abs(s1 - s2) <= eps * scale &&
           std::abs(a * b + c * d) <= eps * scale;
}

AffineMap AffineMap::similarity(Point p, Point q, Point p2, Point q2,
                                bool reflect) {
    Point u = q - p, v = q2 - p2;
    double l = u.sq_len();
    if (l < kEpsDeriv * kEpsDeriv)
        throw std::domain_error("similarity: coincident source points");
    // Complex multiplication by v/u, or by v*u/|u|^2 composed with
    // conjugation for the reflecting variant.
    AffineMap m;
    if (!reflect) {
        double ra = (v.x * u.x + v.y * u.y) / l;
        double rc = (v.y * u.x - v.x * u.y) / l;
        m = {ra, -rc, rc, ra, 0, 0};
    } else {
        double sa = (v.x * u.x - v.y * u.y) / l;
        double sb = (v.x * u.y + v.y * u.x) / l;
        m = {sa, sb, sb, -sa, 0, 0};
    }
    Point mp = m(p);
    m.tx = p2.x - mp.x;
    m.ty = p2.y - mp.y;
    return m;
}

// --------------------------------------------------------------------

Point CubicBezier::point(double t) const {
    if (t < 0.0 || t > 1.0) throw std::domain_error("CubicBezier::point: t outside [0,1]");
    double u = 1 - t;
    return u * u * u * p0 + 3 * u * u * t * p1 + 3 * u * t * t * p2 +
           t * t * t * p3;
}

Point CubicBezier::derivative(double t) const {
    double u = 1 - t;
    return 3 * (u * u * (p1 - p0) + 2 * u * t * (p2 - p1) + t * t * (p3 - p2));
}

Point CubicBezier::second_derivative(double t) const {
    return 6 * ((1 - t) * (p2 - 2 * p1 + p0) + t * (p3 - 2 * p2 + p1));
}

std::optional<double> CubicBezier::curvature(double t) const {
    Point d1 = derivative(t);
    double speed = d1.len();
    if (speed < kEpsDeriv) return std::nullopt;
    Point d2 = second_derivative(t);
    return std::abs(d1.cross(d2)) / (speed * speed * speed);
}

std::pair<CubicBezier, CubicBezier> CubicBezier::subdivide(double t) const {
    if (!(t > 0.0 && t < 1.0))
        throw std::domain_error("CubicBezier::subdivide: t outside (0,1)");
    Point q0 = (1 - t) * p0 + t * p1;
    Point q1 = (1 - t) * p1 + t * p2;
    Point q2 = (1 - t) * p2 + t * p3;
    Point r0 = (1 - t) * q0 + t * q1;
    Point r1 = (1 - t) * q1 + t * q2;
    Point s = (1 - t) * r0 + t * r1;
    return {CubicBezier{p0, q0, r0, s}, CubicBezier{s, r1, q2, p3}};
}

CubicBezier CubicBezier::slice(double t0, double t1) const {
    CubicBezier c = *this;
    if (t1 < 1.0) c = c.subdivide(t1).first;
    if (t0 > 0.0) {
        double local = t0 / t1;
        if (local < 1.0) c = c.subdivide(local).second;
    }
    return c;
}

Rect CubicBezier::bbox() const {
    Rect r{p0.x, p0.y, p0.x, p0.y};
    r.add(p1);
    r.add(p2);
    r.add(p3);
    return r;
}

bool CubicBezier::straight(double precision) const {
    Point d = p3 - p0;
    double l = d.len();
    if (l < precision)
        return dist(p1, p0) < precision && dist(p2, p0) < precision;
    d = (1.0 / l) * d;
    return std::abs(d.cross(p1 - p0)) < precision &&
           std::abs(d.cross(p2 - p0)) < precision;
}

CubicBezier elevate(const QuadBezier &q) {
    return {q.q0, (1.0 / 3.0) * (q.q0 + 2 * q.q1),
            (1.0 / 3.0) * (2 * q.q1 + q.q2), q.q2};
}

CubicBezier apply(const AffineMap &m, const CubicBezier &c) {
    if (std::abs(m.det()) < kEpsDeriv * kEpsDeriv)
        throw std::domain_error("apply: singular map");
    return {m(c.p0), m(c.p1), m(c.p2), m(c.p3)};
}

double crossing_angle(const CubicBezier &a, double ta, const CubicBezier &b,
                      double tb) {
    return acute_angle(a.derivative(ta), b.derivative(tb));
}

// --------------------------------------------------------------------
// Curve-curve intersection.

namespace {

struct Span {
    double a0, a1, b0, b1;
};

void collect_candidates(const CubicBezier &a, const CubicBezier &b,
                        const IntersectOptions &opt, std::vector<CurveHit> &raw) {
    // Bound the recursion; 2^18 boxes is well past any honest transversal
    // configuration, so blowing through it signals an overlap-like case.
    std::vector<Span> stack{{0, 1, 0, 1}};
    const double param_floor = 1e-8;
    int budget = 1 << 18;
    while (!stack.empty() && budget-- > 0 &&
           raw.size() < 20000) {
        Span s = stack.back();
        stack.pop_back();
        CubicBezier ca = a.slice(s.a0, s.a1);
        CubicBezier cb = b.slice(s.b0, s.b1);
        if (!ca.bbox().overlaps(cb.bbox(), opt.tol)) continue;
        bool fine_a = (s.a1 - s.a0) < param_floor;
        bool fine_b = (s.b1 - s.b0) < param_floor;
        if (fine_a && fine_b) {
            raw.push_back({0.5 * (s.a0 + s.a1), 0.5 * (s.b0 + s.b1), Point{}});
            continue;
        }
        double am = 0.5 * (s.a0 + s.a1), bm = 0.5 * (s.b0 + s.b1);
        if (fine_a) {
            stack.push_back({s.a0, s.a1, s.b0, bm});
            stack.push_back({s.a0, s.a1, bm, s.b1});
        } else if (fine_b) {
            stack.push_back({s.a0, am, s.b0, s.b1});
            stack.push_back({am, s.a1, s.b0, s.b1});
        } else {
            stack.push_back({s.a0, am, s.b0, bm});
            stack.push_back({s.a0, am, bm, s.b1});
            stack.push_back({am, s.a1, s.b0, bm});
            stack.push_back({am, s.a1, bm, s.b1});
        }
    }
}

// Newton polish of a candidate pair; clamped to [0,1]^2.
bool refine(const CubicBezier &a, const CubicBezier &b, double &ta, double &tb,
            double tol) {
    for (int it = 0; it < 50; ++it) {
        Point fa = a.point(ta), fb = b.point(tb);
        Point r = fa - fb;
        Point da = a.derivative(ta), db = b.derivative(tb);
        double j11 = da.x, j12 = -db.x, j21 = da.y, j22 = -db.y;
        double det = j11 * j22 - j12 * j21;
        double sa, sb;
        if (std::abs(det) > 1e-14) {
            sa = (-r.x * j22 + r.y * j12) / det;
            sb = (-j11 * r.y + j21 * r.x) / det;
        } else {
            // Tangential contact: gradient descent on |r|^2.
            double ga = 2 * r.dot(da), gb = -2 * r.dot(db);
            double gn = ga * ga + gb * gb;
            if (gn < 1e-30) break;
            double step = r.sq_len() / gn;
            sa = -step * ga;
            sb = -step * gb;
        }
        double limit = 0.1;
        sa = std::clamp(sa, -limit, limit);
        sb = std::clamp(sb, -limit, limit);
        ta = std::clamp(ta + sa, 0.0, 1.0);
        tb = std::clamp(tb + sb, 0.0, 1.0);
        if (std::abs(sa) < 1e-16 && std::abs(sb) < 1e-16) break;
    }
    return dist(a.point(ta), b.point(tb)) < tol;
}

//! Roots of a cubic in Bernstein form on [lo,hi] by sign-pattern
//! subdivision; tangential touches come out as interval-floor candidates.
void bernstein_roots(const std::array<double, 4> &phi, double lo, double hi,
                     std::vector<double> &out) {
    bool allpos = true, allneg = true;
    for (double v : phi) {
        allpos = allpos && v > 0;
        allneg = allneg && v < 0;
    }
    if (allpos || allneg) return;
    if (hi - lo < 1e-10) {
        out.push_back(0.5 * (lo + hi));
        return;
    }
    double m01 = 0.5 * (phi[0] + phi[1]);
    double m12 = 0.5 * (phi[1] + phi[2]);
    double m23 = 0.5 * (phi[2] + phi[3]);
    double m012 = 0.5 * (m01 + m12), m123 = 0.5 * (m12 + m23);
    double mid = 0.5 * (m012 + m123);
    double half = 0.5 * (lo + hi);
    bernstein_roots({phi[0], m01, m012, mid}, lo, half, out);
    bernstein_roots({mid, m123, m23, phi[3]}, half, hi, out);
}

//! Intersections when one operand is a straight cubic: the signed
//! distance of the other curve to the carrier line is a cubic polynomial,
//! so the hits are its roots. Returns false when the straight curve is
//! too short to define a line.
bool line_curve_hits(const CubicBezier &line, const CubicBezier &curve,
                     double tol, std::vector<std::array<double, 2>> &hits,
                     bool &overlap) {
    Point d = line.p3 - line.p0;
    double len = d.len();
    if (len < 1e-9) return false;
    Point n = (1.0 / len) * d.orthogonal();
    Point dir = (1.0 / len) * d;
    std::array<double, 4> phi{(curve.p0 - line.p0).dot(n),
                              (curve.p1 - line.p0).dot(n),
                              (curve.p2 - line.p0).dot(n),
                              (curve.p3 - line.p0).dot(n)};
    bool collinear = true;
    for (double v : phi) collinear = collinear && std::abs(v) < tol;
    if (collinear) {
        // both run along one line: a positive-length common span is an
        // overlap, a mere touch is a single contact point
        double c0 = (curve.p0 - line.p0).dot(dir);
        double c1 = (curve.p1 - line.p0).dot(dir);
        double c2 = (curve.p2 - line.p0).dot(dir);
        double c3 = (curve.p3 - line.p0).dot(dir);
        double clo = std::min({c0, c1, c2, c3});
        double chi = std::max({c0, c1, c2, c3});
        double ilo = std::max(clo, 0.0), ihi = std::min(chi, len);
        if (ihi - ilo > 10 * tol) {
            overlap = true;
            return true;
        }
        if (ihi - ilo > -tol) {
            // touching end to end: locate the touch parameters
            double want = 0.5 * (ilo + ihi);
            Point p = line.p0 + want * dir;
            auto param_near = [&](const CubicBezier &c) {
                double best_t = 0, best_d = 1e300;
                for (int i = 0; i <= 64; ++i) {
                    double t = i / 64.0;
                    double dd = dist(c.point(t), p);
                    if (dd < best_d) {
                        best_d = dd;
                        best_t = t;
                    }
                }
                return best_t;
            };
            double s = param_near(line), t = param_near(curve);
            if (dist(line.point(s), curve.point(t)) < tol)
                hits.push_back({s, t});
        }
        return true;  // collinear, disjoint or touching spans
    }
    std::vector<double> roots;
    bernstein_roots(phi, 0.0, 1.0, roots);
    auto f = [&](double t) { return (curve.point(t) - line.p0).dot(n); };
    auto fp = [&](double t) { return curve.derivative(t).dot(n); };
    for (double t : roots) {
        for (int it = 0; it < 40; ++it) {
            double g = fp(t);
            if (std::abs(g) < 1e-300) break;
            double step = std::clamp(-f(t) / g, -0.02, 0.02);
            t = std::clamp(t + step, 0.0, 1.0);
            if (std::abs(step) < 1e-17) break;
        }
        Point p = curve.point(t);
        if (std::abs((p - line.p0).dot(n)) > tol) continue;
        // parameter on the straight cubic via its own Bernstein roots
        double want = (p - line.p0).dot(dir);
        std::array<double, 4> psi{(line.p0 - line.p0).dot(dir) - want,
                                  (line.p1 - line.p0).dot(dir) - want,
                                  (line.p2 - line.p0).dot(dir) - want,
                                  (line.p3 - line.p0).dot(dir) - want};
        std::vector<double> sroots;
        bernstein_roots(psi, 0.0, 1.0, sroots);
        double best_s = -1, best_d = 1e300;
        for (double s : sroots) {
            for (int it = 0; it < 40; ++it) {
                double g = (line.point(s) - p).dot(dir);
                double gp = line.derivative(s).dot(dir);
                if (std::abs(gp) < 1e-300) break;
                double step = std::clamp(-g / gp, -0.02, 0.02);
                s = std::clamp(s + step, 0.0, 1.0);
                if (std::abs(step) < 1e-17) break;
            }
            double dd = dist(line.point(s), p);
            if (dd < best_d) {
                best_d = dd;
                best_s = s;
            }
        }
        if (best_s >= 0 && best_d < tol) hits.push_back({best_s, t});
    }
    return true;
}

bool detect_overlap(const CubicBezier &a, const CubicBezier &b, double tol) {
    // Overlap means a positive-length sub-arc of a stays within tol of b.
    int run = 0, best = 0;
    for (int i = 0; i <= 64; ++i) {
        double t = i / 64.0;
        Point p = a.point(t);
        double d = 1e300;
        double ts = 0;
        for (int j = 0; j <= 32; ++j) {
            double u = j / 32.0;
            double dd = dist(p, b.point(u));
            if (dd < d) {
                d = dd;
                ts = u;
            }
        }
        // local golden refinement of the projection
        double lo = std::max(0.0, ts - 1.0 / 32), hi = std::min(1.0, ts + 1.0 / 32);
        for (int j = 0; j < 40; ++j) {
            double m1 = lo + (hi - lo) * 0.382, m2 = lo + (hi - lo) * 0.618;
            if (dist(p, b.point(m1)) < dist(p, b.point(m2)))
                hi = m2;
            else
                lo = m1;
        }
        d = std::min(d, dist(p, b.point(0.5 * (lo + hi))));
        run = d < tol * 10 ? run + 1 : 0;
        best = std::max(best, run);
    }
    return best >= 8;
}

}  // namespace

IntersectResult intersect(const CubicBezier &a, const CubicBezier &b,
                          const IntersectOptions &opt) {
    if (opt.tol <= 0) throw std::domain_error("intersect: tol must be positive");
    IntersectResult res;
    std::vector<CurveHit> polished;

    // Straight operands get the polynomial path: immune to the box
    // subdivision blowup near-parallel slivers cause.
    bool sa = a.straight(1e-12), sb = b.straight(1e-12);
    bool handled = false;
    if (sa || sb) {
        std::vector<std::array<double, 2>> hits;
        bool overlap = false;
        if (sa) {
            handled = line_curve_hits(a, b, opt.tol, hits, overlap);
            for (auto &h : hits)
                polished.push_back({h[0], h[1], a.point(h[0])});
        } else {
            handled = line_curve_hits(b, a, opt.tol, hits, overlap);
            for (auto &h : hits)
                polished.push_back({h[1], h[0], a.point(h[1])});
        }
        if (handled && overlap) {
            res.overlap = true;
            return res;
        }
    }

    if (!handled) {
        std::vector<CurveHit> raw;
        collect_candidates(a, b, opt, raw);
        if (raw.size() > 3000) {
            if (detect_overlap(a, b, opt.tol)) {
                res.overlap = true;
                return res;
            }
        }
        // Cluster candidates in parameter space, then polish one
        // representative per cluster.
        std::sort(raw.begin(), raw.end(), [](const CurveHit &l,
                                             const CurveHit &r) {
            return l.ta < r.ta;
        });
        const double coarse = 2e-7;  // candidates come from ~1e-8 boxes
        for (size_t i = 0; i < raw.size();) {
            size_t j = i;
            double ta = 0, tb = 0;
            size_t n = 0;
            while (j < raw.size() && raw[j].ta - raw[i].ta < coarse) {
                ta += raw[j].ta;
                tb += raw[j].tb;
                ++n;
                ++j;
            }
            ta /= n;
            tb /= n;
            if (refine(a, b, ta, tb, opt.tol))
                polished.push_back({ta, tb, a.point(ta)});
            i = j;
        }
    }
    std::sort(polished.begin(), polished.end(),
              [](const CurveHit &l, const CurveHit &r) { return l.ta < r.ta; });
    std::vector<CurveHit> merged;
    for (const CurveHit &h : polished) {
        bool dup = false;
        for (const CurveHit &m : merged)
            if (std::abs(h.ta - m.ta) < opt.cluster &&
                std::abs(h.tb - m.tb) < opt.cluster) {
                dup = true;
                break;
            }
        if (!dup) merged.push_back(h);
    }
    for (const CurveHit &h : merged) {
        bool near_a = h.ta < opt.exclude_a0 || h.ta > 1.0 - opt.exclude_a1;
        bool near_b = h.tb < opt.exclude_b0 || h.tb > 1.0 - opt.exclude_b1;
        if (near_a && near_b) continue;
        res.hits.push_back(h);
    }
    return res;
}

std::optional<std::array<double, 2>> line_params(Point p1, Point p2, Point p3,
                                                 Point p4) {
    Point r = p2 - p1, s = p4 - p3;
    double den = r.cross(s);
    if (std::abs(den) < kEpsDeriv * std::max(r.len() * s.len(), 1.0))
        return std::nullopt;
    Point q = p3 - p1;
    return std::array<double, 2>{q.cross(s) / den, q.cross(r) / den};
}

// --------------------------------------------------------------------

ConvexPolygon::ConvexPolygon(std::vector<Point> vs) : verts(std::move(vs)) {
    if (verts.size() < 3)
        throw std::domain_error("ConvexPolygon: fewer than 3 vertices");
    double area2 = 0;
    for (size_t i = 0; i < verts.size(); ++i) {
        Point p = verts[i], q = verts[(i + 1) % verts.size()];
        area2 += p.cross(q);
    }
    if (area2 < 0) std::reverse(verts.begin(), verts.end());
    double scale = 0;
    for (Point p : verts) scale = std::max(scale, std::abs(p.x) + std::abs(p.y));
    scale = std::max(scale, 1.0);
    for (size_t i = 0; i < verts.size(); ++i) {
        Point p = verts[i];
        Point q = verts[(i + 1) % verts.size()];
        Point r = verts[(i + 2) % verts.size()];
        if (dist(p, q) < kEpsGeom * scale)
            throw std::domain_error("ConvexPolygon: repeated vertices");
        if ((q - p).cross(r - q) < -kEpsGeom * scale * scale)
            throw std::domain_error("ConvexPolygon: not convex");
    }
}

bool ConvexPolygon::contains_point(Point p, double tol) const {
    for (size_t i = 0; i < verts.size(); ++i) {
        Point a = verts[i], b = verts[(i + 1) % verts.size()];
        Point e = b - a;
        double l = e.len();
        if (l < kEpsDeriv) continue;
        if (e.cross(p - a) / l < -tol) return false;
    }
    return true;
}

Point ConvexPolygon::centroid() const {
    Point c{0, 0};
    for (Point p : verts) c += p;
    return (1.0 / double(verts.size())) * c;
}

double ConvexPolygon::ray_exit(Point p, Point dir) const {
    double best = 1e300;
    for (size_t i = 0; i < verts.size(); ++i) {
        Point a = verts[i], b = verts[(i + 1) % verts.size()];
        Point n = (b - a).orthogonal();  // inward for ccw
        double dn = n.dot(dir);
        if (dn >= -kEpsDeriv) continue;  // moving away from this edge? keep
        double s = n.dot(a - p) / dn;
        if (s >= 0) best = std::min(best, s);
    }
    return best == 1e300 ? 0.0 : best;
}

ConvexPolygon ConvexPolygon::scaled_about_centroid(double f) const {
    Point c = centroid();
    std::vector<Point> vs;
    vs.reserve(verts.size());
    for (Point p : verts) vs.push_back(c + f * (p - c));
    return ConvexPolygon(vs);
}

bool contains(const ConvexPolygon &poly, const CubicBezier &c, double tol) {
    struct Item {
        CubicBezier piece;
        int depth;
    };
    std::vector<Item> stack{{c, 0}};
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        const CubicBezier &p = it.piece;
        if (poly.contains_point(p.p0, tol) && poly.contains_point(p.p1, tol) &&
            poly.contains_point(p.p2, tol) && poly.contains_point(p.p3, tol))
            continue;  // convex hull property settles this piece
        if (!poly.contains_point(p.point(0.5), tol)) return false;
        if (it.depth >= 40) {
            if (!poly.contains_point(p.point(0.25), tol) ||
                !poly.contains_point(p.point(0.75), tol))
                return false;
            continue;
        }
        auto [l, r] = p.subdivide(0.5);
        stack.push_back({l, it.depth + 1});
        stack.push_back({r, it.depth + 1});
    }
    return true;
}

bool point_in_triangle(Point a, Point b, Point c, Point p, double tol) {
    double s = (b - a).cross(c - a);
    if (std::abs(s) < kEpsDeriv) return false;
    double sign = s > 0 ? 1.0 : -1.0;
    auto side = [&](Point u, Point v) {
        Point e = v - u;
        double l = std::max(e.len(), kEpsDeriv);
        return sign * e.cross(p - u) / l;
    };
    return side(a, b) >= -tol && side(b, c) >= -tol && side(c, a) >= -tol;
}

}  // namespace bezdraw
