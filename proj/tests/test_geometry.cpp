#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bezdraw/geometry.hpp"
#include "oracles.hpp"

using namespace bezdraw;

static const CubicBezier kArc{{0, 0}, {0, 1}, {1, 1}, {1, 0}};

TEST_CASE("eval endpoint interpolation is exact") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        CubicBezier c = oracles::random_curve(rng, -50, 50);
        CHECK(c.point(0.0) == c.p0);
        CHECK(c.point(1.0) == c.p3);
    }
}

TEST_CASE("eval matches the explicit polynomial") {
    Point p = kArc.point(0.5);
    CHECK(p.x == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p.y == doctest::Approx(0.75).epsilon(1e-15));
    CHECK_THROWS_AS(kArc.point(1.5), std::domain_error);
    CHECK_THROWS_AS(kArc.point(-0.1), std::domain_error);
}

TEST_CASE("convex hull property") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        CubicBezier c = oracles::random_curve(rng, -10, 10);
        Rect r = c.bbox();
        for (int j = 0; j <= 64; ++j) {
            Point p = c.point(j / 64.0);
            CHECK(p.x >= r.x0 - 1e-12);
            CHECK(p.x <= r.x1 + 1e-12);
            CHECK(p.y >= r.y0 - 1e-12);
            CHECK(p.y <= r.y1 + 1e-12);
        }
    }
}

TEST_CASE("curvature: straight line is zero, known value at t=1/2") {
    CubicBezier line = CubicBezier::segment({0, 0}, {3, 4});
    for (int i = 1; i < 10; ++i)
        CHECK(*line.curvature(i / 10.0) == doctest::Approx(0.0).epsilon(1e-12));
    // x'=3/2, x''=0, y'=0, y''=-6 at t=1/2 for the arc fixture
    CHECK(*kArc.curvature(0.5) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("curvature reports cusp instead of a number") {
    // p0=p1 collapses the tangent at t=0
    CubicBezier c{{0, 0}, {0, 0}, {1, 1}, {2, 0}};
    CHECK(!c.curvature(0.0).has_value());
    CHECK(c.curvature(0.5).has_value());
}

TEST_CASE("curvature agrees with finite differences away from cusps") {
    std::mt19937_64 rng(13);
    int checked = 0;
    while (checked < 200) {
        CubicBezier c = oracles::random_curve(rng, 0, 10);
        std::uniform_real_distribution<double> td(0.05, 0.95);
        double t = td(rng);
        if (c.derivative(t).len() < 1e-3) continue;
        auto k = c.curvature(t);
        REQUIRE(k.has_value());
        double ref = oracles::fd_curvature(c, t);
        if (ref > 1e-9)
            CHECK(*k == doctest::Approx(ref).epsilon(1e-4));
        ++checked;
    }
}

TEST_CASE("degree elevation") {
    QuadBezier degenerate{{0, 0}, {0, 0}, {0, 0}};
    CubicBezier d = elevate(degenerate);
    CHECK(d.p0 == Point{0, 0});
    CHECK(d.p1 == Point{0, 0});
    CHECK(d.p2 == Point{0, 0});
    CHECK(d.p3 == Point{0, 0});

    QuadBezier q{{0, 0}, {3, 3}, {6, 0}};
    CubicBezier c = elevate(q);
    CHECK(c.p0 == Point{0, 0});
    CHECK(c.p1 == Point{2, 2});
    CHECK(c.p2 == Point{4, 2});
    CHECK(c.p3 == Point{6, 0});
    double worst = 0;
    for (int i = 0; i <= 500; ++i) {
        double t = i / 500.0;
        worst = std::max(worst, dist(c.point(t), q.point(t)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("subdivision splits exactly") {
    CubicBezier line = CubicBezier::segment({0, 0}, {2, 2});
    auto [l, r] = line.subdivide(0.5);
    CHECK(l.straight(1e-12));
    CHECK(r.straight(1e-12));

    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        CubicBezier c = oracles::random_curve(rng, -5, 5);
        std::uniform_real_distribution<double> td(0.05, 0.95);
        double t = td(rng);
        auto [a, b] = c.subdivide(t);
        CHECK(dist(a.point(1.0), c.point(t)) < 1e-12);
        // sampled reproduction of the original curve by both pieces
        double worst = 0;
        for (int j = 0; j <= 200; ++j) {
            double u = j / 200.0;
            worst = std::max(worst, dist(a.point(u), c.point(u * t)));
            worst = std::max(worst, dist(b.point(u), c.point(t + u * (1 - t))));
        }
        CHECK(worst < 1e-12);
    }
    CHECK_THROWS_AS(line.subdivide(0.0), std::domain_error);
    CHECK_THROWS_AS(line.subdivide(1.0), std::domain_error);
}

TEST_CASE("affine equivariance over random similarities") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> td(0, 1);
    for (int i = 0; i < 100; ++i) {
        CubicBezier c = oracles::random_curve(rng, -10, 10);
        Point p = oracles::random_point(rng, -5, 5);
        Point q = oracles::random_point(rng, -5, 5);
        if (dist(p, q) < 0.1) continue;
        AffineMap m = AffineMap::similarity(p, q, oracles::random_point(rng, -5, 5),
                                            oracles::random_point(rng, -5, 5),
                                            i % 2 == 0);
        REQUIRE(m.angle_preserving(1e-9));
        double t = td(rng);
        CHECK(dist(apply(m, c).point(t), m(c.point(t))) < 1e-10);
    }
}

TEST_CASE("affine map identity, translation, inverse") {
    CubicBezier c = kArc;
    CubicBezier id = apply(AffineMap::identity(), c);
    CHECK(id.p0 == c.p0);
    CHECK(id.p2 == c.p2);
    CubicBezier sh = apply(AffineMap::translation({1, 0}), c);
    for (int i = 0; i <= 10; ++i) {
        double t = i / 10.0;
        CHECK(dist(sh.point(t), c.point(t) + Point{1, 0}) < 1e-15);
    }
    AffineMap m = AffineMap::similarity({0, 0}, {1, 0}, {3, 4}, {5, 6});
    AffineMap round = m.then(m.inverse());
    CHECK(dist(round({2.5, -7.0}), {2.5, -7.0}) < 1e-12);
    AffineMap singular{1, 0, 2, 0, 0, 0};
    CHECK_THROWS_AS(apply(singular, c), std::domain_error);
}

TEST_CASE("intersect: disjoint, crossing segments, shared-endpoint exclusion") {
    CubicBezier s1 = CubicBezier::segment({0, 0}, {1, 0});
    CubicBezier s2 = CubicBezier::segment({0, 2}, {1, 2});
    CHECK(intersect(s1, s2).hits.empty());

    CubicBezier d1 = CubicBezier::segment({0, 0}, {1, 1});
    CubicBezier d2 = CubicBezier::segment({0, 1}, {1, 0});
    auto r = intersect(d1, d2);
    REQUIRE(r.hits.size() == 1);
    CHECK(r.hits[0].ta == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.hits[0].tb == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(dist(r.hits[0].p, {0.5, 0.5}) < 1e-9);

    // curves sharing an endpoint: excluded when asked
    CubicBezier e1 = CubicBezier::segment({0, 0}, {1, 0});
    CubicBezier e2 = CubicBezier::segment({0, 0}, {0, 1});
    IntersectOptions opt;
    opt.exclude_a0 = opt.exclude_b0 = 1e-4;
    CHECK(intersect(e1, e2, opt).hits.empty());
    CHECK(intersect(e1, e2).hits.size() == 1);
}

TEST_CASE("intersect: overlap outcome") {
    CubicBezier c = kArc;
    CHECK(intersect(c, c).overlap);
    auto [l, r] = c.subdivide(0.6);
    CHECK(intersect(c, l).overlap);
    (void)r;
}

TEST_CASE("intersect agrees with dense-sampling oracle on random pairs") {
    std::mt19937_64 rng(23);
    int done = 0;
    while (done < 60) {
        CubicBezier a = oracles::random_curve(rng, 0, 10);
        CubicBezier b = oracles::random_curve(rng, 0, 10);
        auto ours = intersect(a, b);
        if (ours.overlap) continue;
        auto ref = oracles::brute_force_hits(a, b, 1e-7);
        REQUIRE(ours.hits.size() == ref.size());
        for (size_t i = 0; i < ref.size(); ++i) {
            CHECK(std::abs(ours.hits[i].ta - ref[i][0]) < 1e-6);
            CHECK(std::abs(ours.hits[i].tb - ref[i][1]) < 1e-6);
        }
        ++done;
    }
}

TEST_CASE("crossing angle") {
    CubicBezier h = CubicBezier::segment({0, 0}, {1, 0});
    CubicBezier v = CubicBezier::segment({0.5, -1}, {0.5, 1});
    CHECK(crossing_angle(h, 0.3, v, 0.7) == doctest::Approx(M_PI / 2).epsilon(1e-12));
    CubicBezier h2 = CubicBezier::segment({0, 1}, {1, 1});
    CHECK(crossing_angle(h, 0.2, h2, 0.9) == doctest::Approx(0.0).epsilon(1e-12));
    CubicBezier degen{{0, 0}, {0, 0}, {0, 0}, {0, 0}};
    CHECK_THROWS_AS(crossing_angle(degen, 0.5, h, 0.5), std::domain_error);
}

TEST_CASE("convex polygon: orientation, containment, ray exit") {
    ConvexPolygon sq(std::vector<Point>{{0, 0}, {0, 1}, {1, 1}, {1, 0}});  // cw input
    // normalized to ccw
    double area2 = 0;
    for (size_t i = 0; i < sq.verts.size(); ++i)
        area2 += sq.verts[i].cross(sq.verts[(i + 1) % 4]);
    CHECK(area2 > 0);
    CHECK(sq.contains_point({0.5, 0.5}));
    CHECK(sq.contains_point({1.0, 0.5}));
    CHECK(!sq.contains_point({1.1, 0.5}));
    CHECK(sq.contains_point({1.05, 0.5}, 0.1));
    CHECK(sq.ray_exit({0.5, 0.5}, {1, 0}) == doctest::Approx(0.5));
    CHECK(sq.ray_exit({0.25, 0.5}, {0, -1}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(ConvexPolygon(std::vector<Point>{{0, 0}, {2, 0}, {1, 1}, {1, -1}}),
                    std::domain_error);
}

TEST_CASE("curve-in-polygon containment") {
    ConvexPolygon tri(std::vector<Point>{{-1, -1}, {3, -1}, {1, 3}});
    CubicBezier inside{{0, 0}, {0.5, 0.8}, {1.2, 0.8}, {1.5, 0}};
    CHECK(contains(tri, inside, 1e-9));
    CubicBezier out{{0, 0}, {0.5, 0.8}, {1.2, 0.8}, {5, 0}};
    CHECK(!contains(tri, out, 1e-9));
    // endpoints exactly on the boundary are fine
    CubicBezier touching{{-1, -1}, {0, 0}, {1, 0}, {3, -1}};
    CHECK(contains(tri, touching, 1e-9));
    // bulging through an edge must be caught even with hull inside checks
    CubicBezier bulge{{-1, -1}, {4, 1.0}, {4, 1.0}, {1, 3}};
    CHECK(!contains(tri, bulge, 1e-9));
}

TEST_CASE("line params helper") {
    auto r = line_params({0, 0}, {1, 0}, {0.25, -1}, {0.25, 1});
    REQUIRE(r.has_value());
    CHECK((*r)[0] == doctest::Approx(0.25));
    CHECK((*r)[1] == doctest::Approx(0.5));
    CHECK(!line_params({0, 0}, {1, 0}, {0, 1}, {1, 1}).has_value());
}
