#include "bezdraw/jointbox.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace bezdraw {

namespace {

void check(bool cond, const std::string &msg) {
    if (!cond) throw StructureError("joint-box: " + msg);
}

//! Linear part of the region-to-canonical-R-frame map (all entries exact).
AffineMap region_linear(PortRegion r) {
    switch (r) {
        case PortRegion::R:
            return {1, 0, 0, 1, 0, 0};
        case PortRegion::L:  // reflect across the vertical axis
            return {-1, 0, 0, 1, 0, 0};
        case PortRegion::MRight:  // rotate +90
            return {0, -1, 1, 0, 0, 0};
        case PortRegion::MLeft:  // reflect, then rotate +90
            return {0, -1, -1, 0, 0, 0};
    }
    return {};
}

//! Angular interval of a region, in degrees counterclockwise from +x.
std::pair<double, double> free_region_interval(FreeRegion r) {
    switch (r) {
        case FreeRegion::M:
            return {45.0, 135.0};
        case FreeRegion::L:
            return {180.0, 225.0};
        case FreeRegion::R:
            return {315.0, 360.0};
    }
    return {0, 0};
}

double angle_deg(Point v) {
    double a = std::atan2(v.y, v.x) * 180.0 / M_PI;
    if (a < 0) a += 360.0;
    return a;
}

bool in_interval(double a, double lo, double hi) {
    const double eps = 1e-9;
    return a >= lo - eps && a <= hi + eps;
}

}  // namespace

int JointBoxDrawing::degree(int v) const {
    int d = 0;
    for (const JointBoxEdge &e : edges) d += (e.a == v) + (e.b == v);
    return d;
}

void JointBoxDrawing::validate() const {
    int n = int(positions.size());
    for (Point p : positions) {
        check(p.finite(), "vertex position not finite");
        check(p.x == std::floor(p.x) && p.y == std::floor(p.y),
              "vertex position not on the integer grid");
    }
    // joint boxes (diamonds of L1 radius 2 deg + 2) pairwise disjoint
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            double l1 = std::abs(positions[u].x - positions[v].x) +
                        std::abs(positions[u].y - positions[v].y);
            double ru = 2 * degree(u) + 2, rv = 2 * degree(v) + 2;
            check(l1 > ru + rv, "joint boxes of " + std::to_string(u) +
                                    " and " + std::to_string(v) +
                                    " are not disjoint");
        }
    std::set<std::tuple<int, int, int>> ports;  // (vertex, region, index)
    for (const JointBoxEdge &e : edges) {
        check(e.a >= 0 && e.a < n && e.b >= 0 && e.b < n && e.a != e.b,
              "bad edge endpoints");
        int da = degree(e.a);
        check(e.port_index >= 1 && e.port_index <= da,
              "port index out of range");
        check(ports.insert({e.a, int(e.port_region), e.port_index}).second,
              "port index used twice in one region");
        // region compatibility: M<->M, L<->R, R<->L
        switch (e.port_region) {
            case PortRegion::L:
                check(e.free_region == FreeRegion::R,
                      "port L must pair with free R");
                break;
            case PortRegion::R:
                check(e.free_region == FreeRegion::L,
                      "port R must pair with free L");
                break;
            default:
                check(e.free_region == FreeRegion::M,
                      "port M must pair with free M");
        }
        // port-side geometry: the far endpoint must sit in the wedge
        normalize_edge(e, *this);
        // free-side geometry: the first leg of the one-bend polyline must
        // leave through the named free region
        auto [lo, hi] = free_region_interval(e.free_region);
        double a = angle_deg(e.bend - positions[e.b]);
        check(in_interval(a, lo, hi) || (lo == 315.0 && in_interval(a, 0, 0)),
              "bend leaves vertex " + std::to_string(e.b) +
                  " outside its free region");
    }
    // only one half of the free M region may carry edges per vertex
    for (int v = 0; v < n; ++v) {
        int half = 0;
        for (const JointBoxEdge &e : edges) {
            if (e.b != v || e.free_region != FreeRegion::M) continue;
            double dx = e.bend.x - positions[v].x;
            if (dx == 0) continue;
            int h = dx > 0 ? 1 : -1;
            check(half == 0 || half == h,
                  "both free M halves used at vertex " + std::to_string(v));
            half = h;
        }
    }
    // ports must follow the rotation order: a larger index is closer to
    // the region corner (smaller frame angle)
    std::map<std::pair<int, int>, std::vector<std::pair<int, double>>> byreg;
    for (const JointBoxEdge &e : edges) {
        AffineMap lin = region_linear(e.port_region);
        Point b = lin(e.bend - positions[e.a]);
        byreg[{e.a, int(e.port_region)}].push_back(
            {e.port_index, angle_deg(b)});
    }
    for (auto &[key, lst] : byreg) {
        std::sort(lst.begin(), lst.end());
        for (size_t i = 1; i < lst.size(); ++i)
            check(lst[i - 1].second > lst[i].second,
                  "port order disagrees with the rotation at vertex " +
                      std::to_string(key.first));
    }
}

AffineMap normalize_edge(const JointBoxEdge &e, const JointBoxDrawing &jbd) {
    AffineMap lin = region_linear(e.port_region);
    AffineMap m = AffineMap::translation(-1.0 * jbd.positions[e.a]).then(lin);
    Point b = m(jbd.positions[e.b]);
    check(b.y >= 0 && b.y < b.x - 1,
          "far endpoint of an edge at vertex " + std::to_string(e.a) +
              " falls outside the admissible wedge");
    return m;
}

EdgeCurveParams edge_curve_params(double b1, double b2, int i, int d) {
    check(b1 > 0 && b2 >= 0 && b2 < b1 - 1, "(b1,b2) outside the wedge");
    check(i >= 1 && i <= d, "port index outside 1..d");
    EdgeCurveParams p;
    p.b1 = b1;
    p.b2 = b2;
    p.i = i;
    p.d = d;
    p.s = b2 / b1;
    p.k = double(i) / double(d + 1);
    p.Q = {1 + p.s / 2, p.s / 2};
    p.P = (1 - p.k) * Point{1, 1} + p.k * p.Q;
    return p;
}

CubicBezier gamma_from_params(double b1, double s, double k) {
    Point Q{1 + s / 2, s / 2};
    Point P = (1 - k) * Point{1, 1} + k * Q;
    return {{0, 0}, P, P, {b1, s * b1}};
}

CubicBezier gamma_curve(double b1, double b2, int i, int d) {
    EdgeCurveParams p = edge_curve_params(b1, b2, i, d);
    return {{0, 0}, p.P, p.P, {b1, b2}};
}

Drawing draw_planar(const JointBoxDrawing &jbd) {
    jbd.validate();
    Drawing out;
    out.vertices = jbd.positions;
    for (const JointBoxEdge &e : jbd.edges) {
        AffineMap m = normalize_edge(e, jbd);
        Point b = m(jbd.positions[e.b]);
        CubicBezier c = gamma_curve(b.x, b.y, e.port_index, jbd.degree(e.a));
        out.edges.push_back({int(out.edges.size()), e.a, e.b,
                             apply(m.inverse(), c)});
    }
    return out;
}

// --------------------------------------------------------------------
// Fixtures.

namespace {

Point port_point(int d, int i) { return {double(d + 1 + i), double(d + 1 - i)}; }

//! World-space bend for an edge whose port endpoint is a.
Point bend_for(const JointBoxDrawing &jbd, int a, PortRegion r, int i) {
    AffineMap lin = region_linear(r);
    // linear parts are involutions or rotations; invert generically
    AffineMap inv = lin.inverse();
    return jbd.positions[a] + inv(port_point(jbd.degree(a), i));
}

JointBoxDrawing star_fixture(int d) {
    JointBoxDrawing j;
    j.positions.push_back({0, 0});  // hub
    for (int leaf = 1; leaf <= d; ++leaf)
        j.positions.push_back({double(40 * d), double(10 * leaf)});
    for (int leaf = 1; leaf <= d; ++leaf) {
        JointBoxEdge e;
        e.a = 0;
        e.port_region = PortRegion::R;
        e.port_index = d + 1 - leaf;  // counterclockwise leaves get the
                                      // ports nearer the region middle
        e.b = leaf;
        e.free_region = FreeRegion::L;
        j.edges.push_back(e);
    }
    for (JointBoxEdge &e : j.edges)
        e.bend = bend_for(j, 0, PortRegion::R, e.port_index);
    return j;
}

JointBoxDrawing wheel8_fixture() {
    JointBoxDrawing j;
    j.positions = {
        {0, 0},         // hub
        {1880, 684},    // v1 at ~20 deg
        {1147, 1638},   // v2 ~55
        {518, 1932},    // v3 ~75
        {70, 1999},     // v4 ~88
        {-1732, 1000},  // v5 ~150
        {-1879, -684},  // v6 ~200
        {-618, -1902},  // v7 ~252
        {1732, -1000},  // v8 ~330
    };
    struct Spec {
        int a, b;
        PortRegion pr;
        int i;
        FreeRegion fr;
    };
    // spokes: port side chosen by the hub-side direction, rim side port
    // used when the hub side is a free region
    std::vector<Spec> specs = {
        {0, 1, PortRegion::R, 1, FreeRegion::L},       // 20 deg
        {2, 0, PortRegion::MLeft, 1, FreeRegion::M},   // hub side 55: free M
        {3, 0, PortRegion::MLeft, 1, FreeRegion::M},   // 75
        {4, 0, PortRegion::MLeft, 1, FreeRegion::M},   // 88
        {0, 5, PortRegion::L, 1, FreeRegion::R},       // 150
        {6, 0, PortRegion::R, 1, FreeRegion::L},       // hub side 200: free L
        {0, 7, PortRegion::MLeft, 1, FreeRegion::M},   // 250
        {8, 0, PortRegion::L, 1, FreeRegion::R},       // hub side 330: free R
        // rim cycle
        {2, 1, PortRegion::MRight, 1, FreeRegion::M},  // v1-v2 (v2 port)
        {2, 3, PortRegion::L, 1, FreeRegion::R},       // v2-v3
        {3, 4, PortRegion::L, 1, FreeRegion::R},       // v3-v4
        {5, 4, PortRegion::R, 1, FreeRegion::L},       // v4-v5 (v5 port)
        {5, 6, PortRegion::MLeft, 1, FreeRegion::M},   // v5-v6
        {7, 6, PortRegion::L, 1, FreeRegion::R},       // v6-v7 (v7 port)
        {7, 8, PortRegion::R, 1, FreeRegion::L},       // v7-v8
        {1, 8, PortRegion::MLeft, 1, FreeRegion::M},   // v8-v1 (v1 port)
    };
    for (const Spec &s : specs) {
        JointBoxEdge e;
        e.a = s.a;
        e.port_region = s.pr;
        e.port_index = s.i;
        e.b = s.b;
        e.free_region = s.fr;
        j.edges.push_back(e);
    }
    for (JointBoxEdge &e : j.edges)
        e.bend = bend_for(j, e.a, e.port_region, e.port_index);
    return j;
}

}  // namespace

JointBoxDrawing make_fixture(const std::string &name) {
    JointBoxDrawing j;
    if (name == "single-edge") {
        j.positions = {{0, 0}, {20, 4}};
        JointBoxEdge e;
        e.a = 0;
        e.port_region = PortRegion::R;
        e.port_index = 1;
        e.b = 1;
        e.free_region = FreeRegion::L;
        j.edges.push_back(e);
        j.edges[0].bend = bend_for(j, 0, PortRegion::R, 1);
        return j;
    }
    if (name == "two-boxes") {
        j.positions = {{0, 0}, {6, -30}};
        JointBoxEdge e;
        e.a = 0;
        e.port_region = PortRegion::MRight;
        e.port_index = 1;
        e.b = 1;
        e.free_region = FreeRegion::M;
        j.edges.push_back(e);
        j.edges[0].bend = bend_for(j, 0, PortRegion::MRight, 1);
        return j;
    }
    if (name.rfind("star-", 0) == 0) {
        int d = std::stoi(name.substr(5));
        check(d >= 1 && d <= 64, "star fixture degree out of range");
        return star_fixture(d);
    }
    if (name == "wheel-8") return wheel8_fixture();
    throw StructureError("joint-box: unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() {
    return {"single-edge", "two-boxes", "star-2",  "star-4",
            "star-8",      "star-16",   "star-32", "wheel-8"};
}

}  // namespace bezdraw
