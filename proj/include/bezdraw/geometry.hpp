// --------------------------------------------------------------------
// bezdraw geometry primitives: points, affine maps, cubic Bezier curves
// --------------------------------------------------------------------
#ifndef BEZDRAW_GEOMETRY_HPP
#define BEZDRAW_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bezdraw {

// Geometric predicate tolerance and tangent-degeneracy threshold used
// throughout the library.
inline constexpr double kEpsGeom = 1e-9;
inline constexpr double kEpsDeriv = 1e-12;

struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    Point() = default;
    Point(double xx, double yy) : x(xx), y(yy) {}

    Point operator+(Point q) const { return {x + q.x, y + q.y}; }
    Point operator-(Point q) const { return {x - q.x, y - q.y}; }
    Point operator-() const { return {-x, -y}; }
    Point &operator+=(Point q) { x += q.x; y += q.y; return *this; }
    bool operator==(const Point &) const = default;

    double dot(Point q) const { return x * q.x + y * q.y; }
    double cross(Point q) const { return x * q.y - y * q.x; }
    double len() const { return std::hypot(x, y); }
    double sq_len() const { return x * x + y * y; }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
    Point normalized() const;
    Point orthogonal() const { return {-y, x}; }
};

inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline double dist(Point p, Point q) { return (p - q).len(); }

//! Acute angle in [0, pi/2] between two direction vectors.
double acute_angle(Point u, Point v);

struct Rect {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    void add(Point p);
    bool overlaps(const Rect &o, double margin) const;
    double size() const { return std::max(x1 - x0, y1 - y0); }
};

// --------------------------------------------------------------------

//! Affine map p -> [a b; c d] p + (tx, ty).
struct AffineMap {
    double a = 1, b = 0, c = 0, d = 1, tx = 0, ty = 0;

    Point operator()(Point p) const {
        return {a * p.x + b * p.y + tx, c * p.x + d * p.y + ty};
    }
    double det() const { return a * d - b * c; }
    AffineMap inverse() const;
    //! Composition: (m.then(n))(p) == n(m(p)).
    AffineMap then(const AffineMap &n) const;
    //! True when the linear part is a scaled rotation or reflection.
    bool angle_preserving(double eps = kEpsGeom) const;

    static AffineMap identity() { return {}; }
    static AffineMap translation(Point t) { return {1, 0, 0, 1, t.x, t.y}; }
    //! Similarity taking p->p2 and q->q2 (rotation+scale+translation,
    //! composed with a reflection across the image axis when reflect is set).
    static AffineMap similarity(Point p, Point q, Point p2, Point q2,
                                bool reflect = false);
};

// --------------------------------------------------------------------

struct CubicBezier;

//! Quadratic Bezier, kept only as a staging type before degree elevation.
struct QuadBezier {
    Point q0, q1, q2;
    Point point(double t) const {
        double u = 1 - t;
        return u * u * q0 + 2 * u * t * q1 + t * t * q2;
    }
    Point derivative(double t) const {
        return 2 * ((1 - t) * (q1 - q0) + t * (q2 - q1));
    }
};

struct CubicBezier {
    Point p0, p1, p2, p3;

    //! Point on the curve; t must lie in [0,1].
    Point point(double t) const;
    //! First derivative with respect to t (valid for any real t).
    Point derivative(double t) const;
    Point second_derivative(double t) const;
    //! Unsigned curvature |x'y''-y'x''| / |f'|^3, or nullopt at a cusp
    //! (tangent magnitude below kEpsDeriv).
    std::optional<double> curvature(double t) const;
    //! de Casteljau split at interior t; left piece covers [0,t].
    std::pair<CubicBezier, CubicBezier> subdivide(double t) const;
    //! Restriction of the curve to the parameter interval [t0,t1].
    CubicBezier slice(double t0, double t1) const;
    Rect bbox() const;
    bool straight(double precision = kEpsGeom) const;

    static CubicBezier segment(Point a, Point b) {
        return {a, (2.0 / 3.0) * a + (1.0 / 3.0) * b,
                (1.0 / 3.0) * a + (2.0 / 3.0) * b, b};
    }
};

//! Degree elevation; the cubic traces the identical point set.
CubicBezier elevate(const QuadBezier &q);

//! Control points mapped individually; equals the mapped curve.
CubicBezier apply(const AffineMap &m, const CubicBezier &c);

//! Acute angle between the tangents of a at tA and b at tB.
double crossing_angle(const CubicBezier &a, double ta, const CubicBezier &b,
                      double tb);

// --------------------------------------------------------------------

struct CurveHit {
    double ta = 0, tb = 0;
    Point p;
};

struct IntersectOptions {
    double tol = 1e-9;
    // Hits closer than this in parameter space on both curves are merged.
    double cluster = 1e-5;
    // Parameter-space exclusion radius around each curve end; a hit is
    // dropped when it is inside an excluded corner on both curves.
    double exclude_a0 = 0, exclude_a1 = 0, exclude_b0 = 0, exclude_b1 = 0;
};

struct IntersectResult {
    std::vector<CurveHit> hits;
    bool overlap = false;  // curves share a sub-arc; hits not meaningful
};

//! All transversal and tangential contacts between two cubics, found by
//! recursive bounding-box subdivision and polished by Newton iteration.
IntersectResult intersect(const CubicBezier &a, const CubicBezier &b,
                          const IntersectOptions &opt = {});

//! Intersection point of segments p1p2 and p3p4 with the parameters along
//! each segment, or nullopt when parallel within kEpsDeriv.
std::optional<std::array<double, 2>> line_params(Point p1, Point p2, Point p3,
                                                 Point p4);

// --------------------------------------------------------------------

//! Convex polygon, stored counterclockwise.
struct ConvexPolygon {
    std::vector<Point> verts;

    ConvexPolygon() = default;
    //! Normalizes orientation to counterclockwise and validates convexity
    //! within kEpsGeom (collinear vertices tolerated, repeats rejected).
    explicit ConvexPolygon(std::vector<Point> vs);

    //! Signed-distance containment: inside the polygon inflated by tol.
    bool contains_point(Point p, double tol = 0.0) const;
    Point centroid() const;
    //! Largest s >= 0 with p + s*dir still inside (p must be inside).
    double ray_exit(Point p, Point dir) const;
    ConvexPolygon scaled_about_centroid(double f) const;
};

//! True iff the whole curve lies inside poly inflated by tol, decided by
//! adaptive subdivision and the convex hull property.
bool contains(const ConvexPolygon &poly, const CubicBezier &c, double tol);

bool point_in_triangle(Point a, Point b, Point c, Point p,
                       double tol = kEpsGeom);

}  // namespace bezdraw

#endif
