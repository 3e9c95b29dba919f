#include "bezdraw/io.hpp"

// json.hpp included via the header

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bezdraw {

namespace {

void check(bool cond, const std::string &msg) {
    if (!cond) throw StructureError("file format: " + msg);
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

// --------------------------------------------------------------------
// EmbeddingFile.

ordered_json save_embedding(const OnePlaneEmbedding &emb) {
    const PlanarEmbedding &pe = emb.pe;
    ordered_json j;
    j["n"] = pe.alive_vertex_count();
    j["edges"] = emb.edge_count;
    // alive vertices must be exactly 0..n-1 for a serializable embedding
    for (int v = 0; v < pe.vertex_count(); ++v)
        check(pe.vertex_alive(v), "embedding has dead vertex slots");
    ordered_json rot = ordered_json::array();
    for (int v = 0; v < pe.vertex_count(); ++v) {
        bool dummy = pe.vertex_kind(v) == VertexKind::CrossDummy;
        std::vector<ordered_json> entries;
        std::vector<std::pair<int, int>> keys;  // (edge, which) for rotation
        for (int d : pe.rotation(v)) {
            const Segment &sg = pe.segment(dart_seg(d));
            int e = sg.edge;
            ordered_json entry;
            if (dummy) {
                // the half through this dart continues toward the real end
                int other = pe.dart_to(d);
                auto [e0, e1] = emb.edge_endpoints(e);
                int toward = other == e0 ? 0 : 1;
                check(other == e0 || other == e1,
                      "dummy spoke does not reach an edge endpoint");
                entry["e"] = e;
                entry["toward"] = toward;
                keys.push_back({e, toward});
            } else {
                auto [e0, e1] = emb.edge_endpoints(e);
                int end = v == e0 ? 0 : 1;
                check(v == e0 || v == e1, "segment at a foreign vertex");
                entry["e"] = e;
                entry["end"] = end;
                keys.push_back({e, end});
            }
            entries.push_back(entry);
        }
        // canonical rotation: smallest (edge, which) first
        size_t best = 0;
        for (size_t i = 1; i < keys.size(); ++i)
            if (keys[i] < keys[best]) best = i;
        ordered_json list = ordered_json::array();
        for (size_t i = 0; i < entries.size(); ++i)
            list.push_back(entries[(best + i) % entries.size()]);
        rot.push_back(list);
    }
    j["rotation"] = rot;
    ordered_json dummies = ordered_json::array();
    for (int v = 0; v < pe.vertex_count(); ++v)
        if (pe.vertex_kind(v) == VertexKind::CrossDummy) dummies.push_back(v);
    j["dummies"] = dummies;
    ordered_json pairs = ordered_json::array();
    for (const CrossingPair &p : emb.pairs)
        pairs.push_back(ordered_json::array({p.edge1, p.edge2}));
    j["crossing_pairs"] = pairs;
    // outer face named by an edge and a side of its end0->end1 traversal
    {
        int s = dart_seg(emb.outer_dart);
        const Segment &sg = pe.segment(s);
        int e = sg.edge;
        auto [e0, e1] = emb.edge_endpoints(e);
        (void)e1;
        // dart of e leaving end0 (for crossed edges, the half at end0)
        int ref = -1;
        for (int seg : emb.edge_segments(e)) {
            if (pe.segment(seg).u == e0) ref = 2 * seg;
            if (pe.segment(seg).v == e0) ref = 2 * seg + 1;
        }
        check(ref >= 0, "outer edge lacks a dart at its first endpoint");
        std::vector<int> left = pe.face_of(ref);
        bool is_left =
            std::find(left.begin(), left.end(), emb.outer_dart) != left.end();
        j["outer_face"] = {{"edge", e}, {"side", is_left ? "left" : "right"}};
    }
    return j;
}

OnePlaneEmbedding load_embedding(const ordered_json &j) {
    check(j.is_object(), "embedding file is not a JSON object");
    for (const char *key :
         {"n", "edges", "rotation", "dummies", "crossing_pairs", "outer_face"})
        check(j.contains(key), std::string("missing key '") + key + "'");
    int n = j.at("n").get<int>();
    int m = j.at("edges").get<int>();
    check(n >= 1 && m >= 0, "bad vertex or edge count");
    check(int(j.at("rotation").size()) == n, "rotation table size != n");
    std::set<int> dummies;
    for (auto &d : j.at("dummies")) dummies.insert(d.get<int>());
    OnePlaneEmbedding emb;
    std::vector<VertexKind> kinds(n, VertexKind::Real);
    for (int d : dummies) {
        check(d >= 0 && d < n, "dummy id out of range");
        kinds[d] = VertexKind::CrossDummy;
    }
    std::set<int> crossed;
    std::vector<std::pair<int, int>> pair_list;
    for (auto &p : j.at("crossing_pairs")) {
        check(p.is_array() && p.size() == 2, "bad crossing pair");
        int e1 = p[0].get<int>(), e2 = p[1].get<int>();
        check(e1 >= 0 && e1 < m && e2 >= 0 && e2 < m, "pair edge id range");
        crossed.insert(e1);
        crossed.insert(e2);
        pair_list.push_back({e1, e2});
    }
    // locate edge ends and dummy attachments
    std::vector<std::array<int, 2>> ends(m, {-1, -1});
    std::vector<std::array<int, 2>> at_dummy(m, {-1, -1});
    for (int v = 0; v < n; ++v) {
        for (auto &entry : j.at("rotation").at(v)) {
            check(entry.is_object() && entry.contains("e"),
                  "rotation entry is not an object with 'e'");
            int e = entry.at("e").get<int>();
            check(e >= 0 && e < m, "rotation edge id out of range");
            if (dummies.count(v)) {
                check(entry.contains("toward"),
                      "dummy rotation entry needs 'toward'");
                int t = entry.at("toward").get<int>();
                check(t == 0 || t == 1, "'toward' must be 0 or 1");
                check(at_dummy[e][t] == -1 || at_dummy[e][t] == v,
                      "edge attached to two dummies");
                at_dummy[e][t] = v;
            } else {
                check(entry.contains("end"), "rotation entry needs 'end'");
                int t = entry.at("end").get<int>();
                check(t == 0 || t == 1, "'end' must be 0 or 1");
                check(ends[e][t] == -1, "edge end listed twice");
                ends[e][t] = v;
            }
        }
    }
    // build segments
    std::vector<std::tuple<int, int, int, EdgeKind>> segs;
    // per edge: segment carrying (end0 side), segment carrying (end1 side)
    std::vector<std::array<int, 2>> seg_of(m, {-1, -1});
    for (int e = 0; e < m; ++e) {
        check(ends[e][0] >= 0 && ends[e][1] >= 0,
              "edge " + std::to_string(e) + " is missing an end");
        if (crossed.count(e)) {
            check(at_dummy[e][0] >= 0 && at_dummy[e][0] == at_dummy[e][1],
                  "crossed edge " + std::to_string(e) +
                      " is not split at one dummy");
            seg_of[e][0] = int(segs.size());
            segs.push_back({ends[e][0], at_dummy[e][0], e, EdgeKind::Original});
            seg_of[e][1] = int(segs.size());
            segs.push_back({ends[e][1], at_dummy[e][0], e, EdgeKind::Original});
        } else {
            check(at_dummy[e][0] == -1 && at_dummy[e][1] == -1,
                  "uncrossed edge touches a dummy");
            seg_of[e][0] = seg_of[e][1] = int(segs.size());
            segs.push_back({ends[e][0], ends[e][1], e, EdgeKind::Original});
        }
    }
    std::vector<std::vector<int>> rot(n);
    for (int v = 0; v < n; ++v) {
        for (auto &entry : j.at("rotation").at(v)) {
            int e = entry.at("e").get<int>();
            int which = dummies.count(v) ? entry.at("toward").get<int>()
                                         : entry.at("end").get<int>();
            rot[v].push_back(seg_of[e][which]);
        }
    }
    emb.pe = PlanarEmbedding::from_rotations(kinds, segs, rot);
    for (auto [e1, e2] : pair_list) {
        check(at_dummy[e1][0] == at_dummy[e2][0],
              "paired edges cross at different dummies");
        emb.pairs.push_back({e1, e2, at_dummy[e1][0]});
    }
    emb.n_input_vertices = n;
    emb.edge_count = m;
    // outer face
    const auto &of = j.at("outer_face");
    check(of.contains("edge") && of.contains("side"), "bad outer_face");
    int oe = of.at("edge").get<int>();
    check(oe >= 0 && oe < m, "outer_face edge id out of range");
    std::string side = of.at("side").get<std::string>();
    check(side == "left" || side == "right", "outer_face side");
    int s0 = seg_of[oe][0];
    int ref = (std::get<0>(segs[s0]) == ends[oe][0]) ? 2 * s0 : 2 * s0 + 1;
    emb.outer_dart = side == "left" ? ref : twin(ref);
    emb.validate();
    return emb;
}

// --------------------------------------------------------------------
// DrawingFile.

ordered_json save_drawing(const Drawing &d) {
    ordered_json j;
    ordered_json vs = ordered_json::array();
    for (Point p : d.vertices) vs.push_back(ordered_json::array({p.x, p.y}));
    j["vertices"] = vs;
    ordered_json es = ordered_json::array();
    for (const DrawnEdge &e : d.edges) {
        ordered_json je;
        je["u"] = e.u;
        je["v"] = e.v;
        je["ctrl"] = ordered_json::array(
            {ordered_json::array({e.curve.p0.x, e.curve.p0.y}),
             ordered_json::array({e.curve.p1.x, e.curve.p1.y}),
             ordered_json::array({e.curve.p2.x, e.curve.p2.y}),
             ordered_json::array({e.curve.p3.x, e.curve.p3.y})});
        es.push_back(je);
    }
    j["edges"] = es;
    ordered_json cs = ordered_json::array();
    for (const DeclaredCrossing &c : d.crossings) {
        ordered_json jc;
        jc["e1"] = c.e1;
        jc["e2"] = c.e2;
        jc["point"] = ordered_json::array({c.point.x, c.point.y});
        cs.push_back(jc);
    }
    j["crossings"] = cs;
    return j;
}

namespace {
Point read_point(const ordered_json &j) {
    check(j.is_array() && j.size() == 2, "point must be [x, y]");
    Point p{j[0].get<double>(), j[1].get<double>()};
    check(p.finite(), "point coordinates must be finite");
    return p;
}
}  // namespace

Drawing load_drawing(const ordered_json &j) {
    check(j.is_object() && j.contains("vertices") && j.contains("edges"),
          "drawing file needs 'vertices' and 'edges'");
    Drawing d;
    for (auto &v : j.at("vertices")) d.vertices.push_back(read_point(v));
    int n = int(d.vertices.size());
    for (auto &je : j.at("edges")) {
        check(je.contains("u") && je.contains("v") && je.contains("ctrl"),
              "edge needs u, v, ctrl");
        DrawnEdge e;
        e.edge = int(d.edges.size());
        e.u = je.at("u").get<int>();
        e.v = je.at("v").get<int>();
        check(e.u >= 0 && e.u < n && e.v >= 0 && e.v < n, "edge endpoint id");
        const auto &c = je.at("ctrl");
        check(c.is_array() && c.size() == 4, "ctrl must hold 4 points");
        e.curve = {read_point(c[0]), read_point(c[1]), read_point(c[2]),
                   read_point(c[3])};
        d.edges.push_back(e);
    }
    if (j.contains("crossings")) {
        for (auto &jc : j.at("crossings")) {
            DeclaredCrossing c;
            c.e1 = jc.at("e1").get<int>();
            c.e2 = jc.at("e2").get<int>();
            check(c.e1 >= 0 && c.e1 < int(d.edges.size()) && c.e2 >= 0 &&
                      c.e2 < int(d.edges.size()),
                  "crossing edge index");
            c.point = read_point(jc.at("point"));
            d.crossings.push_back(c);
        }
    }
    return d;
}

// --------------------------------------------------------------------
// JointBoxFile.

namespace {
const std::map<std::string, PortRegion> kPortNames{
    {"L", PortRegion::L},
    {"R", PortRegion::R},
    {"M-left", PortRegion::MLeft},
    {"M-right", PortRegion::MRight}};
const std::map<std::string, FreeRegion> kFreeNames{
    {"L", FreeRegion::L}, {"R", FreeRegion::R}, {"M", FreeRegion::M}};

std::string port_name(PortRegion r) {
    for (auto &[k, v] : kPortNames)
        if (v == r) return k;
    return "?";
}
std::string free_name(FreeRegion r) {
    for (auto &[k, v] : kFreeNames)
        if (v == r) return k;
    return "?";
}
}  // namespace

ordered_json save_jointbox(const JointBoxDrawing &jbd) {
    ordered_json j;
    ordered_json vs = ordered_json::array();
    for (Point p : jbd.positions)
        vs.push_back(ordered_json::array({p.x, p.y}));
    j["vertices"] = vs;
    ordered_json es = ordered_json::array();
    for (const JointBoxEdge &e : jbd.edges) {
        ordered_json je;
        je["a"] = e.a;
        je["port_region"] = port_name(e.port_region);
        je["port_index"] = e.port_index;
        je["b"] = e.b;
        je["free_region"] = free_name(e.free_region);
        je["bend"] = ordered_json::array({e.bend.x, e.bend.y});
        es.push_back(je);
    }
    j["edges"] = es;
    return j;
}

JointBoxDrawing load_jointbox(const ordered_json &j) {
    check(j.is_object() && j.contains("vertices") && j.contains("edges"),
          "joint-box file needs 'vertices' and 'edges'");
    JointBoxDrawing jbd;
    for (auto &v : j.at("vertices")) jbd.positions.push_back(read_point(v));
    for (auto &je : j.at("edges")) {
        JointBoxEdge e;
        e.a = je.at("a").get<int>();
        e.b = je.at("b").get<int>();
        std::string pr = je.at("port_region").get<std::string>();
        check(kPortNames.count(pr), "unknown port region '" + pr + "'");
        e.port_region = kPortNames.at(pr);
        e.port_index = je.at("port_index").get<int>();
        std::string fr = je.at("free_region").get<std::string>();
        check(kFreeNames.count(fr), "unknown free region '" + fr + "'");
        e.free_region = kFreeNames.at(fr);
        e.bend = read_point(je.at("bend"));
        jbd.edges.push_back(e);
    }
    jbd.validate();
    return jbd;
}

// --------------------------------------------------------------------
// Reports and SVG.

ordered_json report_to_json(const VerificationReport &rep) {
    ordered_json j;
    j["verdict"] = rep.pass() ? "pass" : "fail";
    ordered_json cs = ordered_json::array();
    for (const FoundCrossing &c : rep.crossings) {
        ordered_json jc;
        jc["e1"] = c.e1;
        jc["e2"] = c.e2;
        jc["point"] = ordered_json::array({c.point.x, c.point.y});
        jc["angle"] = c.angle;
        jc["declared"] = c.declared;
        cs.push_back(jc);
    }
    j["crossings"] = cs;
    ordered_json vs = ordered_json::array();
    for (const Violation &v : rep.violations) {
        static const char *names[] = {
            "unexpected-intersection", "missing-crossing",
            "bad-angle",               "overlapping-edges",
            "resolution-shortfall",    "containment-breach",
            "infinite-curvature"};
        ordered_json jv;
        jv["type"] = names[int(v.type)];
        jv["detail"] = v.detail;
        vs.push_back(jv);
    }
    j["violations"] = vs;
    ordered_json res;
    for (auto &[v, r] : rep.min_angular_resolution)
        res[std::to_string(v)] = r;
    j["min_angular_resolution"] = res;
    j["max_curvature"] = rep.max_curvature;
    return j;
}

void render_svg(const Drawing &d, std::ostream &out, bool mark_crossings) {
    Rect b = d.bounds();
    double w = std::max(b.x1 - b.x0, 1e-9), h = std::max(b.y1 - b.y0, 1e-9);
    double mx = 0.05 * w, my = 0.05 * h;
    // flip the y axis with a group transform so control-point text stays
    // bit-for-bit the drawing's coordinates
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
        << fmt17(b.x0 - mx) << " " << fmt17(-b.y1 - my) << " "
        << fmt17(w + 2 * mx) << " " << fmt17(h + 2 * my) << "\">\n";
    out << "<g transform=\"matrix(1 0 0 -1 0 0)\" fill=\"none\""
        << " stroke=\"black\" stroke-width=\"" << fmt17(0.003 * std::max(w, h))
        << "\">\n";
    for (const DrawnEdge &e : d.edges) {
        const CubicBezier &c = e.curve;
        out << "<path d=\"M " << fmt17(c.p0.x) << " " << fmt17(c.p0.y) << " C "
            << fmt17(c.p1.x) << " " << fmt17(c.p1.y) << ", " << fmt17(c.p2.x)
            << " " << fmt17(c.p2.y) << ", " << fmt17(c.p3.x) << " "
            << fmt17(c.p3.y) << "\"/>\n";
    }
    double r = 0.008 * std::max(w, h);
    for (Point p : d.vertices)
        out << "<circle cx=\"" << fmt17(p.x) << "\" cy=\"" << fmt17(p.y)
            << "\" r=\"" << fmt17(r) << "\" fill=\"black\"/>\n";
    if (mark_crossings) {
        for (const DeclaredCrossing &c : d.crossings)
            out << "<circle cx=\"" << fmt17(c.point.x) << "\" cy=\""
                << fmt17(c.point.y) << "\" r=\"" << fmt17(1.5 * r)
                << "\" stroke=\"red\"/>\n";
    }
    out << "</g>\n</svg>\n";
}

// --------------------------------------------------------------------

ordered_json read_json_file(const std::string &path) {
    std::ifstream in(path);
    check(in.good(), "cannot open '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception &ex) {
        throw StructureError("file format: parse error in '" + path +
                             "': " + ex.what());
    }
    return j;
}

void write_json_file(const std::string &path, const ordered_json &j) {
    std::ofstream out(path);
    check(out.good(), "cannot write '" + path + "'");
    out << j.dump(1) << "\n";
}

void write_svg_file(const std::string &path, const Drawing &d,
                    bool mark_crossings) {
    std::ofstream out(path);
    check(out.good(), "cannot write '" + path + "'");
    render_svg(d, out, mark_crossings);
}

}  // namespace bezdraw
