#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bezdraw/jointbox.hpp"
#include "bezdraw/verifier.hpp"

using namespace bezdraw;

TEST_CASE("edge curve parameters: spec substitutions") {
    EdgeCurveParams p = edge_curve_params(10, 0, 1, 3);
    CHECK(p.s == 0.0);
    CHECK(p.k == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p.Q.x == doctest::Approx(1.0));
    CHECK(p.Q.y == doctest::Approx(0.0));
    CHECK(p.P.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.P.y == doctest::Approx(0.75).epsilon(1e-15));

    EdgeCurveParams q = edge_curve_params(10, 5, 2, 3);
    CHECK(q.s == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q.Q.x == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(q.Q.y == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(q.k == doctest::Approx(0.5).epsilon(1e-15));

    CHECK_THROWS_AS(edge_curve_params(10, 9.5, 1, 3), StructureError);
    CHECK_THROWS_AS(edge_curve_params(0.5, 0, 1, 3), StructureError);
    CHECK_THROWS_AS(edge_curve_params(10, 1, 0, 3), StructureError);
}

TEST_CASE("gamma endpoints and wedge containment") {
    CubicBezier g = gamma_curve(10, 0, 1, 3);
    CHECK(g.point(0.0) == Point{0, 0});
    CHECK(g.point(1.0) == Point{10, 0});
    // x > y > 0 strictly inside the parameter range
    for (double b2 : {0.0, 2.0, 5.0, 8.5}) {
        for (int i = 1; i <= 3; ++i) {
            CubicBezier c = gamma_curve(10, b2, i, 3);
            for (int j = 1; j < 128; ++j) {
                Point p = c.point(j / 128.0);
                CHECK(p.x > p.y);
                CHECK(p.y > -1e-12);
            }
        }
    }
}

TEST_CASE("same-endpoint curves nest by k and never cross") {
    // Lemma property: k1 > k2 means the k2 curve runs above, meeting only
    // at the endpoints.
    for (double s : {0.0, 0.3, 0.7, 0.95}) {
        double b1 = 12;
        CubicBezier lo = gamma_from_params(b1, s, 0.8);  // k1 large
        CubicBezier hi = gamma_from_params(b1, s, 0.2);  // k2 small
        IntersectOptions opt;
        opt.tol = 1e-9;
        opt.exclude_a0 = opt.exclude_b0 = 1e-4;
        opt.exclude_a1 = opt.exclude_b1 = 1e-4;
        auto r = intersect(lo, hi, opt);
        CHECK(!r.overlap);
        CHECK(r.hits.empty());
        // vertical order after rotating the P1P2 line upright reduces to:
        // the small-k curve stays weakly left/above along the join line
        Point dir = (hi.p1 - lo.p1).normalized();
        for (int j = 1; j < 64; ++j) {
            double t = j / 64.0;
            double proj = (hi.point(t) - lo.point(t)).dot(dir);
            CHECK(proj > -1e-9);
        }
    }
}

TEST_CASE("counterclockwise-later endpoints lift the curve") {
    // Lemma property: same k, target C counterclockwise after B; curves
    // meet only at the shared endpoint, monotone in the sheared frame.
    double k = 0.4;
    CubicBezier g1 = gamma_from_params(14, 0.2, k);
    CubicBezier g2 = gamma_from_params(13, 0.5, k);  // higher slope target
    IntersectOptions opt;
    opt.tol = 1e-9;
    opt.exclude_a0 = opt.exclude_b0 = 1e-4;  // shared endpoint A only
    auto r = intersect(g1, g2, opt);
    CHECK(!r.overlap);
    CHECK(r.hits.empty());
    // shear (x,y) -> (x-y, x+y): both coordinate functions monotone
    for (const CubicBezier &c : {g1, g2}) {
        double px = -1e300, py = -1e300;
        for (int j = 0; j <= 256; ++j) {
            Point p = c.point(j / 256.0);
            double sx = p.x - p.y, sy = p.x + p.y;
            CHECK(sx >= px - 1e-9);
            CHECK(sy >= py - 1e-9);
            px = sx;
            py = sy;
        }
    }
}

TEST_CASE("normalize_edge: frames and port points") {
    JointBoxDrawing j = make_fixture("star-4");
    // R-region edges keep the identity linear part
    AffineMap m = normalize_edge(j.edges[0], j);
    CHECK(m.a == 1.0);
    CHECK(m.b == 0.0);
    CHECK(m.c == 0.0);
    CHECK(m.d == 1.0);
    // the bend (placed on the port) maps to (d+1+i, d+1-i)
    for (const JointBoxEdge &e : j.edges) {
        AffineMap f = normalize_edge(e, j);
        Point pp = f(e.bend);
        CHECK(pp.x == doctest::Approx(4 + 1 + e.port_index).epsilon(1e-12));
        CHECK(pp.y == doctest::Approx(4 + 1 - e.port_index).epsilon(1e-12));
    }
    // L frames reflect (negative determinant), all frames are similarities
    JointBoxDrawing w = make_fixture("wheel-8");
    bool saw_reflection = false;
    for (const JointBoxEdge &e : w.edges) {
        AffineMap f = normalize_edge(e, w);
        CHECK(f.angle_preserving(1e-12));
        if (e.port_region == PortRegion::L) {
            CHECK(f.det() < 0);
            saw_reflection = true;
        }
    }
    CHECK(saw_reflection);
}

TEST_CASE("fixtures validate and draw") {
    for (const std::string &name : fixture_names()) {
        CAPTURE(name);
        JointBoxDrawing j = make_fixture(name);
        j.validate();
        Drawing d = draw_planar(j);
        CHECK(d.edges.size() == j.edges.size());
        for (size_t i = 0; i < d.edges.size(); ++i) {
            CHECK(dist(d.edges[i].curve.point(0.0),
                       d.vertices[d.edges[i].u]) < 1e-9);
            CHECK(dist(d.edges[i].curve.point(1.0),
                       d.vertices[d.edges[i].v]) < 1e-9);
        }
    }
    CHECK(make_fixture("star-4").edges.size() == 4);
    CHECK(make_fixture("wheel-8").edges.size() == 16);
    CHECK_THROWS_AS(make_fixture("nonesuch"), StructureError);
}

TEST_CASE("fixture census: no contacts beyond shared endpoints") {
    for (const std::string &name : fixture_names()) {
        CAPTURE(name);
        Drawing d = draw_planar(make_fixture(name));
        VerificationReport rep = census(d);
        for (auto &v : rep.violations) MESSAGE(v.detail);
        CHECK(rep.pass());
        CHECK(rep.crossings.empty());
    }
}

TEST_CASE("port index collision and other invalid inputs") {
    JointBoxDrawing j = make_fixture("star-4");
    j.edges[1].port_index = j.edges[0].port_index;
    CHECK_THROWS_AS(j.validate(), StructureError);

    JointBoxDrawing close = make_fixture("single-edge");
    close.positions[1] = {8, 0};  // boxes overlap
    CHECK_THROWS_AS(close.validate(), StructureError);

    JointBoxDrawing wrongpair = make_fixture("single-edge");
    wrongpair.edges[0].free_region = FreeRegion::R;
    CHECK_THROWS_AS(wrongpair.validate(), StructureError);
}

TEST_CASE("star angular resolution meets the law-of-sines bound") {
    for (int d : {2, 4, 8, 16, 32}) {
        CAPTURE(d);
        Drawing dr = draw_planar(make_fixture("star-" + std::to_string(d)));
        double res = angular_resolution(dr, 0);
        double bound = std::asin(1.0 / (std::sqrt(10.0) * d));
        CHECK(res >= bound - 1e-9);
    }
}

TEST_CASE("normalized curvature bound on a coarse grid") {
    // The 12/128 bound holds where kappa^2/b1 has its interior maximum in
    // b1 (and empirically from b1 >= 8 onward); at the b1=4 boundary the
    // true supremum is larger but still gives kappa = O(sqrt(b1)). The
    // sweep checks both regimes; the acceptance suite runs the stated
    // criterion on the full 101^3 grid.
    double worst_small = 0, worst_large = 0;
    for (double b1 : {4.0, 8.0, 64.0, 1024.0}) {
        double worst = 0;
        for (int si = 0; si <= 20; ++si)
            for (int ki = 0; ki <= 20; ++ki) {
                CubicBezier c = gamma_from_params(b1, si / 20.0, ki / 20.0);
                for (int ti = 0; ti <= 40; ++ti) {
                    auto kap = c.curvature(ti / 40.0);
                    if (kap) worst = std::max(worst, *kap * *kap / b1);
                }
            }
        (b1 < 8.0 ? worst_small : worst_large) =
            std::max(b1 < 8.0 ? worst_small : worst_large, worst);
    }
    CHECK(worst_large <= 12.0 / 128.0 + 1e-6);
    CHECK(worst_small <= 0.26);
}

TEST_CASE("curvature at b1=4 stays under 3 (coarse grid)") {
    for (int si = 0; si <= 25; ++si)
        for (int ki = 0; ki <= 25; ++ki) {
            CubicBezier c = gamma_from_params(4.0, si / 25.0, ki / 25.0);
            for (int ti = 0; ti <= 50; ++ti) {
                auto kap = c.curvature(ti / 50.0);
                if (kap) CHECK(*kap < 3.0);
            }
        }
}

TEST_CASE("single gamma edge curvature matches a dense-sampling maximum") {
    Drawing d;
    d.vertices = {{0, 0}, {10, 0}};
    d.edges.push_back({0, 0, 1, gamma_curve(10, 0, 1, 3)});
    double got = max_curvature(d, 1024);
    double brute = 0;
    const CubicBezier &c = d.edges[0].curve;
    for (int i = 0; i <= 1000000; ++i) {
        auto k = c.curvature(i / 1000000.0);
        if (k) brute = std::max(brute, *k);
    }
    CHECK(got == doctest::Approx(brute).epsilon(1e-6));
}

TEST_CASE("draw_planar curvature is bounded by sqrt(12 W / 128)") {
    for (const std::string &name : fixture_names()) {
        CAPTURE(name);
        Drawing d = draw_planar(make_fixture(name));
        Rect b = d.bounds();
        double W = std::max(b.x1 - b.x0, b.y1 - b.y0);
        double kap = max_curvature(d);
        CHECK(kap <= std::sqrt(12.0 / 128.0) * std::sqrt(W) + 1e-6);
    }
}
