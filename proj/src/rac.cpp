#include "bezdraw/rac.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace bezdraw {

namespace {

void structural(bool cond, const std::string &msg) {
    if (!cond) throw StructureError(msg);
}

void pipeline_assert(bool cond, const std::string &msg) {
    if (!cond) throw std::logic_error("rac pipeline: " + msg);
}

//! Insert vertex w inside a face, joined to every corner of its walk.
int star_face_in(PlanarEmbedding &pe, const std::vector<int> &walk,
                 const std::vector<int> &spoke_edges, VertexKind kind,
                 EdgeKind ekind) {
    int w = pe.add_vertex(kind);
    int s = pe.add_pendant(walk[0], w, spoke_edges[0], ekind);
    int at_w = 2 * s + 1;
    for (size_t i = 1; i < walk.size(); ++i) {
        int ns = pe.split_face(at_w, walk[i], spoke_edges[i], ekind);
        at_w = 2 * ns;
    }
    return w;
}

int dart_at(const PlanarEmbedding &pe, int seg, int vertex) {
    if (pe.segment(seg).u == vertex) return 2 * seg;
    pipeline_assert(pe.segment(seg).v == vertex,
                    "dart_at: vertex not on segment");
    return 2 * seg + 1;
}

//! Re-point a face dart before some of its segments die.
int surviving_dart(const PlanarEmbedding &pe, const std::vector<int> &walk,
                   const std::set<int> &dying_segs) {
    (void)pe;
    for (int d : walk)
        if (!dying_segs.count(dart_seg(d))) return d;
    throw std::logic_error("surviving_dart: face fully removed");
}

}  // namespace

// --------------------------------------------------------------------
// Augmentation.

OnePlaneEmbedding augment(const OnePlaneEmbedding &input) {
    input.validate();
    OnePlaneEmbedding emb = input;
    PlanarEmbedding &pe = emb.pe;
    int next_edge = emb.edge_count;

    // close every crossing into an empty kite
    for (const CrossingPair &p : emb.pairs) {
        int chi = p.dummy;
        std::vector<int> spokes = pe.rotation(chi);
        for (int i = 0; i < 4; ++i) {
            std::vector<int> wedge = pe.face_of(spokes[i]);
            int next_spoke = spokes[(i + 1) % 4];
            pipeline_assert(wedge.back() == twin(next_spoke),
                            "kite wedge does not end at the next spoke");
            if (wedge.size() == 3) continue;  // kite edge already in place
            pe.split_face(wedge.back(), wedge[1], next_edge++,
                          EdgeKind::KiteHelper);
        }
    }

    // remove 2-faces until none remain
    for (;;) {
        bool found = false;
        for (auto &walk : pe.faces()) {
            if (walk.size() != 2) continue;
            int sA = dart_seg(walk[0]), sB = dart_seg(walk[1]);
            const Segment &a = pe.segment(sA), &b = pe.segment(sB);
            structural(pe.vertex_kind(a.u) != VertexKind::CrossDummy &&
                           pe.vertex_kind(a.v) != VertexKind::CrossDummy,
                       "2-face incident to a crossing");
            int victim;
            bool a_orig = a.kind == EdgeKind::Original;
            bool b_orig = b.kind == EdgeKind::Original;
            if (a_orig && b_orig)
                throw StructureError(
                    "parallel original edges bounding an empty 2-face are "
                    "unsupported");
            if (a_orig)
                victim = sB;
            else if (b_orig)
                victim = sA;
            else
                victim = std::max(sA, sB);
            if (dart_seg(emb.outer_dart) == victim)
                emb.outer_dart =
                    surviving_dart(pe, pe.face_of(emb.outer_dart), {victim});
            pe.remove_segment(victim);
            found = true;
            break;
        }
        if (!found) break;
    }

    // remove crossed edges running parallel to another edge, smoothing
    // their dummy away so the partner edge becomes a single segment again
    for (;;) {
        int victim_edge = -1, victim_pair = -1;
        for (int pi = 0; pi < int(emb.pairs.size()) && victim_edge < 0; ++pi) {
            for (int e : {emb.pairs[pi].edge1, emb.pairs[pi].edge2}) {
                auto [eu, ev] = emb.edge_endpoints(e);
                for (int s = 0; s < pe.segment_count(); ++s) {
                    if (!pe.seg_alive(s)) continue;
                    const Segment &sg = pe.segment(s);
                    if (sg.edge == e) continue;
                    if ((sg.u == eu && sg.v == ev) ||
                        (sg.u == ev && sg.v == eu)) {
                        victim_edge = e;
                        victim_pair = pi;
                        break;
                    }
                }
                if (victim_edge >= 0) break;
            }
        }
        if (victim_edge < 0) break;

        CrossingPair p = emb.pairs[victim_pair];
        int partner = (victim_edge == p.edge1) ? p.edge2 : p.edge1;
        int chi = p.dummy;
        auto partner_segs = emb.edge_segments(partner);
        auto victim_segs = emb.edge_segments(victim_edge);
        pipeline_assert(partner_segs.size() == 2 && victim_segs.size() == 2,
                        "crossed edge not split in two");
        auto [pc, pd] = emb.edge_endpoints(partner);
        std::set<int> dying(partner_segs.begin(), partner_segs.end());
        dying.insert(victim_segs.begin(), victim_segs.end());
        // rotation anchors for re-splicing the merged partner segment
        auto anchor = [&](int vert) -> int {
            int d = -1;
            for (int ps : partner_segs) {
                const Segment &sg = pe.segment(ps);
                if (sg.u == vert || sg.v == vert) d = dart_at(pe, ps, vert);
            }
            pipeline_assert(d >= 0, "partner dart missing");
            if (pe.degree(vert) == 1) return -1;
            const auto &r = pe.rotation(vert);
            int i = pe.rotation_index(vert, d);
            return r[(i + int(r.size()) - 1) % int(r.size())];
        };
        int prev_c = anchor(pc), prev_d = anchor(pd);
        if (dying.count(dart_seg(emb.outer_dart)))
            emb.outer_dart =
                surviving_dart(pe, pe.face_of(emb.outer_dart), dying);
        pe.remove_vertex(chi);
        int news =
            pe.add_isolated_segment(pc, pd, partner, EdgeKind::Original);
        pe.remove_segment(news);
        int pos_c = prev_c < 0 ? 0 : pe.rotation_index(pc, prev_c) + 1;
        int pos_d = prev_d < 0 ? 0 : pe.rotation_index(pd, prev_d) + 1;
        pe.splice_segment(news, pc, pos_c, pd, pos_d);
        emb.dropped_edges.insert(victim_edge);
        emb.pairs.erase(emb.pairs.begin() + victim_pair);
    }

    // star-triangulate every longer face
    for (;;) {
        bool found = false;
        for (auto &walk : pe.faces()) {
            if (walk.size() <= 3) continue;
            for (int d : walk)
                structural(pe.vertex_kind(pe.dart_from(d)) !=
                               VertexKind::CrossDummy,
                           "long face with a crossing corner");
            std::vector<int> spoke_edges;
            for (size_t i = 0; i < walk.size(); ++i)
                spoke_edges.push_back(next_edge++);
            star_face_in(pe, walk, spoke_edges, VertexKind::StarHelper,
                         EdgeKind::StarHelper);
            found = true;
            break;
        }
        if (!found) break;
    }

    emb.edge_count = next_edge;
    for (auto &walk : pe.faces())
        pipeline_assert(walk.size() == 3, "augment left a non-triangle face");
    emb.validate();
    return emb;
}

// --------------------------------------------------------------------
// Separation pairs and contraction.

std::optional<std::pair<int, int>> find_separation_pair(
    const std::vector<std::vector<int>> &adj) {
    int n = int(adj.size());
    std::vector<int> verts;
    for (int v = 0; v < n; ++v)
        if (!adj[v].empty()) verts.push_back(v);
    if (verts.size() < 4) return std::nullopt;
    std::vector<uint8_t> blocked(n, 0), vis(n, 0);
    for (size_t i = 0; i < verts.size(); ++i) {
        for (size_t j = i + 1; j < verts.size(); ++j) {
            int u = verts[i], v = verts[j];
            blocked[u] = blocked[v] = 1;
            std::fill(vis.begin(), vis.end(), 0);
            int start = -1;
            for (int w : verts)
                if (!blocked[w]) {
                    start = w;
                    break;
                }
            int reached = 0, expected = int(verts.size()) - 2;
            if (start >= 0) {
                std::vector<int> stack{start};
                vis[start] = 1;
                reached = 1;
                while (!stack.empty()) {
                    int w = stack.back();
                    stack.pop_back();
                    for (int x : adj[w])
                        if (!blocked[x] && !vis[x]) {
                            vis[x] = 1;
                            ++reached;
                            stack.push_back(x);
                        }
                }
            }
            blocked[u] = blocked[v] = 0;
            if (reached < expected) return std::make_pair(u, v);
        }
    }
    return std::nullopt;
}

namespace {

std::vector<std::vector<int>> abstract_adj(const RacGraph &g) {
    std::vector<std::vector<int>> adj(g.pe.vertex_count());
    for (int s = 0; s < g.pe.segment_count(); ++s) {
        if (!g.pe.seg_alive(s)) continue;
        const Segment &sg = g.pe.segment(s);
        if (g.pe.vertex_kind(sg.u) == VertexKind::CrossDummy ||
            g.pe.vertex_kind(sg.v) == VertexKind::CrossDummy)
            continue;
        adj[sg.u].push_back(sg.v);
        adj[sg.v].push_back(sg.u);
    }
    for (const CrossingPair &p : g.pairs) {
        const auto &r = g.pe.rotation(p.dummy);
        pipeline_assert(r.size() == 4, "dummy degree broken");
        adj[g.pe.dart_to(r[0])].push_back(g.pe.dart_to(r[2]));
        adj[g.pe.dart_to(r[2])].push_back(g.pe.dart_to(r[0]));
        adj[g.pe.dart_to(r[1])].push_back(g.pe.dart_to(r[3]));
        adj[g.pe.dart_to(r[3])].push_back(g.pe.dart_to(r[1]));
    }
    return adj;
}

struct LensInfo {
    std::set<int> region;             // vertices strictly inside
    std::vector<int> inner_parallel;  // u-v segments strictly inside
};

std::optional<LensInfo> lens_region(const PlanarEmbedding &pe, int u, int v,
                                    int s1, int s2) {
    int d1 = dart_at(pe, s1, u), d2 = dart_at(pe, s2, u);
    const auto &ru = pe.rotation(u);
    int i1 = pe.rotation_index(u, d1);
    LensInfo out;
    std::vector<int> seeds;
    for (int i = (i1 + 1) % int(ru.size()); ru[i] != d2;
         i = (i + 1) % int(ru.size())) {
        int head = pe.dart_to(ru[i]);
        if (head == v)
            out.inner_parallel.push_back(dart_seg(ru[i]));
        else
            seeds.push_back(head);
    }
    // the matching arc at v runs from s2 around to s1
    int e1 = dart_at(pe, s1, v), e2 = dart_at(pe, s2, v);
    const auto &rv = pe.rotation(v);
    int j2 = pe.rotation_index(v, e2);
    for (int i = (j2 + 1) % int(rv.size()); rv[i] != e1;
         i = (i + 1) % int(rv.size())) {
        int head = pe.dart_to(rv[i]);
        if (head != u) seeds.push_back(head);
    }
    if (seeds.empty() && out.inner_parallel.empty()) return std::nullopt;
    for (int s : seeds) {
        if (out.region.count(s)) continue;
        std::vector<int> stack{s};
        out.region.insert(s);
        while (!stack.empty()) {
            int w = stack.back();
            stack.pop_back();
            for (int d : pe.rotation(w)) {
                int x = pe.dart_to(d);
                if (x == u || x == v || out.region.count(x)) continue;
                out.region.insert(x);
                stack.push_back(x);
            }
        }
    }
    return out;
}

std::set<int> excised_segments(const PlanarEmbedding &pe,
                               const LensInfo &lens, int s1, int s2) {
    std::set<int> segs{s1, s2};
    for (int s : lens.inner_parallel) segs.insert(s);
    for (int w : lens.region)
        for (int d : pe.rotation(w)) segs.insert(dart_seg(d));
    return segs;
}

bool lens_contains_outer(const RacGraph &g, const LensInfo &lens, int s1,
                         int s2) {
    std::set<int> kept = excised_segments(g.pe, lens, s1, s2);
    std::vector<int> walk = g.pe.face_of(g.outer_dart);
    bool all_kept = true, any_strict = false;
    for (int d : walk) {
        int s = dart_seg(d);
        if (!kept.count(s)) all_kept = false;
        if (kept.count(s) && s != s1 && s != s2) any_strict = true;
    }
    return all_kept && any_strict;
}

bool excision_fixes(const RacGraph &g, int u, int v, int s1, int s2,
                    const LensInfo &lens) {
    std::set<int> gone = excised_segments(g.pe, lens, s1, s2);
    const PlanarEmbedding &pe = g.pe;
    std::vector<std::vector<int>> adj(pe.vertex_count());
    auto add = [&](int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (int s = 0; s < pe.segment_count(); ++s) {
        if (!pe.seg_alive(s) || gone.count(s)) continue;
        const Segment &sg = pe.segment(s);
        if (pe.vertex_kind(sg.u) == VertexKind::CrossDummy ||
            pe.vertex_kind(sg.v) == VertexKind::CrossDummy)
            continue;
        add(sg.u, sg.v);
    }
    for (const CrossingPair &p : g.pairs) {
        if (lens.region.count(p.dummy)) continue;
        const auto &r = pe.rotation(p.dummy);
        add(pe.dart_to(r[0]), pe.dart_to(r[2]));
        add(pe.dart_to(r[1]), pe.dart_to(r[3]));
    }
    add(u, v);  // the thick edge
    std::vector<uint8_t> vis(pe.vertex_count(), 0);
    vis[u] = vis[v] = 1;
    int start = -1, alive = 0;
    for (int w = 0; w < pe.vertex_count(); ++w) {
        if (!pe.vertex_alive(w) || lens.region.count(w) > 0 || w == u ||
            w == v)
            continue;
        ++alive;
        if (start < 0) start = w;
    }
    if (start < 0) return false;  // nothing would remain outside
    std::vector<int> stack{start};
    vis[start] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int w = stack.back();
        stack.pop_back();
        for (int x : adj[w])
            if (!vis[x] && lens.region.count(x) == 0) {
                vis[x] = 1;
                ++reached;
                stack.push_back(x);
            }
    }
    return reached == alive;
}

void do_excision(RacGraph &g, int u, int v, int s1, int s2,
                 const LensInfo &lens) {
    Fragment frag;
    frag.u = u;
    frag.v = v;
    frag.seg_straight = s1;
    frag.seg_bulge = s2;
    // the dart of s1 leaving u borders the wedge toward the lens
    frag.lens_side = (g.pe.segment(s1).u == u) ? 0 : 1;

    std::set<int> keep = excised_segments(g.pe, lens, s1, s2);
    frag.graph.pe = g.pe;
    for (int s = 0; s < frag.graph.pe.segment_count(); ++s)
        if (frag.graph.pe.seg_alive(s) && !keep.count(s))
            frag.graph.pe.remove_segment(s);
    for (int w = 0; w < frag.graph.pe.vertex_count(); ++w)
        if (frag.graph.pe.vertex_alive(w) && w != u && w != v &&
            lens.region.count(w) == 0)
            frag.graph.pe.remove_vertex(w);
    for (auto it = g.pairs.begin(); it != g.pairs.end();) {
        if (lens.region.count(it->dummy)) {
            frag.graph.pairs.push_back(*it);
            it = g.pairs.erase(it);
        } else {
            ++it;
        }
    }
    for (auto it = g.thick.begin(); it != g.thick.end();) {
        if (keep.count(it->first)) {
            int ni = int(frag.graph.fragments.size());
            frag.graph.fragments.push_back(std::move(g.fragments[it->second]));
            g.fragments[it->second].u = -1;  // hollow shell
            frag.graph.thick[it->first] = ni;
            it = g.thick.erase(it);
        } else {
            ++it;
        }
    }
    frag.graph.outer_dart = 2 * s1 + (1 - frag.lens_side);
    pipeline_assert(
        frag.graph.pe.face_of(frag.graph.outer_dart).size() == 2,
        "fragment outer face is not the boundary 2-face");

    // the outer face may border the bulge edge s2; re-point its dart first
    std::set<int> dying = keep;
    dying.erase(s1);
    if (dying.count(dart_seg(g.outer_dart)))
        g.outer_dart = surviving_dart(g.pe, g.pe.face_of(g.outer_dart), dying);
    for (int w : lens.region) g.pe.remove_vertex(w);
    for (int s : lens.inner_parallel)
        if (g.pe.seg_alive(s)) g.pe.remove_segment(s);
    g.pe.remove_segment(s2);
    g.pe.set_edge_kind(s1, EdgeKind::Thick);
    g.thick[s1] = int(g.fragments.size());
    g.fragments.push_back(std::move(frag));
    pipeline_assert(g.pe.euler_ok(), "excision broke planarity");
}

void assert_simple(const RacGraph &g, const char *where) {
    std::set<std::pair<int, int>> seen;
    auto visit = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        pipeline_assert(a != b, std::string(where) + ": self-loop");
        pipeline_assert(seen.insert({a, b}).second,
                        std::string(where) + ": parallel edges remain");
    };
    for (int s = 0; s < g.pe.segment_count(); ++s) {
        if (!g.pe.seg_alive(s)) continue;
        const Segment &sg = g.pe.segment(s);
        if (g.pe.vertex_kind(sg.u) == VertexKind::CrossDummy ||
            g.pe.vertex_kind(sg.v) == VertexKind::CrossDummy)
            continue;
        visit(sg.u, sg.v);
    }
    for (const CrossingPair &p : g.pairs) {
        const auto &r = g.pe.rotation(p.dummy);
        visit(g.pe.dart_to(r[0]), g.pe.dart_to(r[2]));
        visit(g.pe.dart_to(r[1]), g.pe.dart_to(r[3]));
    }
}

void contract_graph(RacGraph &g) {
    for (;;) {
        auto sep = find_separation_pair(abstract_adj(g));
        if (!sep) break;
        auto [u, v] = *sep;
        std::vector<int> cands;
        for (int s = 0; s < g.pe.segment_count(); ++s) {
            if (!g.pe.seg_alive(s)) continue;
            const Segment &sg = g.pe.segment(s);
            if ((sg.u == u && sg.v == v) || (sg.u == v && sg.v == u))
                cands.push_back(s);
        }
        pipeline_assert(cands.size() >= 2,
                        "no parallel edges between separation pair {" +
                            std::to_string(u) + "," + std::to_string(v) + "}");
        bool done = false;
        for (int s1 : cands) {
            for (int s2 : cands) {
                if (s1 == s2) continue;
                auto lens = lens_region(g.pe, u, v, s1, s2);
                if (!lens || lens->region.empty()) continue;
                if (lens_contains_outer(g, *lens, s1, s2)) continue;
                if (!excision_fixes(g, u, v, s1, s2, *lens)) continue;
                do_excision(g, u, v, s1, s2, *lens);
                done = true;
                break;
            }
            if (done) break;
        }
        pipeline_assert(done, "no excisable lens for separation pair {" +
                                  std::to_string(u) + "," +
                                  std::to_string(v) + "}");
    }
    for (Fragment &f : g.fragments) {
        if (f.u < 0) continue;  // moved-out shell
        contract_graph(f.graph);
    }
}

}  // namespace

RacGraph contract(OnePlaneEmbedding emb) {
    emb.validate();
    RacGraph g;
    g.pe = std::move(emb.pe);
    g.pairs = std::move(emb.pairs);
    g.outer_dart = emb.outer_dart;
    contract_graph(g);
    assert_simple(g, "contract");
    pipeline_assert(!find_separation_pair(abstract_adj(g)).has_value(),
                    "separation pair survived contraction");
    return g;
}

// --------------------------------------------------------------------
// Convex (Tutte) drawing.

std::vector<Point> tutte_positions(const PlanarEmbedding &H,
                                   const std::vector<int> &outer_walk,
                                   const std::vector<Point> &boundary) {
    pipeline_assert(outer_walk.size() == boundary.size(),
                    "boundary size mismatch");
    int n = H.vertex_count();
    std::vector<Point> pos(n, Point{0, 0});
    std::vector<uint8_t> fixed(n, 0);
    for (size_t i = 0; i < outer_walk.size(); ++i) {
        int v = H.dart_from(outer_walk[i]);
        fixed[v] = 1;
        pos[v] = boundary[i];
    }
    std::vector<int> interior;
    std::vector<int> index(n, -1);
    for (int v = 0; v < n; ++v)
        if (H.vertex_alive(v) && !fixed[v] && H.degree(v) > 0) {
            index[v] = int(interior.size());
            interior.push_back(v);
        }
    int m = int(interior.size());
    if (m == 0) return pos;
    std::vector<std::vector<double>> A(m, std::vector<double>(m + 2, 0.0));
    for (int i = 0; i < m; ++i) {
        int v = interior[i];
        A[i][i] = double(H.degree(v));
        for (int d : H.rotation(v)) {
            int w = H.dart_to(d);
            if (index[w] >= 0) {
                A[i][index[w]] -= 1.0;
            } else {
                A[i][m] += pos[w].x;
                A[i][m + 1] += pos[w].y;
            }
        }
    }
    for (int c = 0; c < m; ++c) {
        int piv = c;
        for (int r = c + 1; r < m; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        pipeline_assert(std::abs(A[c][c]) > 1e-12,
                        "singular barycentric system");
        for (int r = 0; r < m; ++r) {
            if (r == c) continue;
            double f = A[r][c] / A[c][c];
            if (f == 0.0) continue;
            for (int k = c; k < m + 2; ++k) A[r][k] -= f * A[c][k];
        }
    }
    for (int i = 0; i < m; ++i)
        pos[interior[i]] = {A[i][m] / A[i][i], A[i][m + 1] / A[i][i]};
    return pos;
}

bool convex_faces_ok(const PlanarEmbedding &H, const std::vector<Point> &pos,
                     int outer_dart) {
    std::vector<int> outer = H.face_of(outer_dart);
    std::set<int> outer_set(outer.begin(), outer.end());
    double orient = 0.0;
    for (const auto &walk : H.faces()) {
        if (outer_set.count(walk[0])) continue;
        for (size_t i = 0; i < walk.size(); ++i) {
            Point a = pos[H.dart_from(walk[i])];
            Point b = pos[H.dart_from(walk[(i + 1) % walk.size()])];
            Point c = pos[H.dart_from(walk[(i + 2) % walk.size()])];
            double cr = (b - a).cross(c - b);
            double scale = std::max(dist(a, b) * dist(b, c), 1e-300);
            if (orient == 0.0 && std::abs(cr) > kEpsGeom * scale)
                orient = cr > 0 ? 1.0 : -1.0;
            if (cr * orient < -kEpsGeom * scale) return false;
        }
    }
    return true;
}

// --------------------------------------------------------------------
// Crossing-pair insertion.

ConvexPolygon quad_with_diagonal(Point a, Point b, Point c, Point d) {
    double area2 = (b - a).cross(c - a) + (c - a).cross(d - a);
    if (area2 >= 0) return ConvexPolygon(std::vector<Point>{a, b, c, d});
    return ConvexPolygon(std::vector<Point>{a, d, c, b});
}

InsertedPair insert_crossing_pair(const std::array<Point, 4> &q) {
    auto hit = line_params(q[0], q[2], q[1], q[3]);
    structural(hit.has_value(), "crossing-pair diagonals are parallel");
    Point X = q[0] + (*hit)[0] * (q[2] - q[0]);
    InsertedPair out;
    out.straight = CubicBezier::segment(q[0], q[2]);
    out.crossing = X;
    ConvexPolygon poly = quad_with_diagonal(q[1], q[2], q[3], q[0]);
    AffineMap fr = diagonal_frame(poly);
    Point sn = fr(q[2]) - fr(q[0]);
    // perpendicular of the straight diagonal, in the frame where the
    // curved diagonal is horizontal
    double m = -sn.x / sn.y;
    SlopeCurveSpec spec = slope_curve(poly, X, m);
    out.curved = spec.result;
    return out;
}

// --------------------------------------------------------------------
// The drawing pipeline.

namespace {

struct QuadRec {
    std::array<int, 4> corners{};
    int anchor_dart = -1;  // a kite-cycle dart surviving the strip
    int e02 = -1, e13 = -1;
    int dummy = -1;
};

struct StripResult {
    PlanarEmbedding H;
    std::vector<QuadRec> quads;
    int outer_dart = -1;
};

StripResult strip_pairs(const RacGraph &g) {
    StripResult res;
    res.H = g.pe;
    res.outer_dart = g.outer_dart;
    for (const CrossingPair &p : g.pairs) {
        int chi = p.dummy;
        std::vector<int> spokes = res.H.rotation(chi);
        pipeline_assert(spokes.size() == 4, "strip: dummy degree not 4");
        std::set<int> spoke_segs;
        for (int d : spokes) spoke_segs.insert(dart_seg(d));
        QuadRec rec;
        rec.dummy = chi;
        rec.e02 = res.H.segment(dart_seg(spokes[0])).edge;
        rec.e13 = res.H.segment(dart_seg(spokes[1])).edge;
        for (int i = 0; i < 4; ++i) {
            std::vector<int> wedge = res.H.face_of(spokes[i]);
            pipeline_assert(wedge.size() == 3,
                            "strip: wedge is not a triangle");
            rec.corners[i] = res.H.dart_to(spokes[i]);
            if (i == 0) rec.anchor_dart = wedge[1];
            if (spoke_segs.count(dart_seg(res.outer_dart)) &&
                std::find(wedge.begin(), wedge.end(), res.outer_dart) !=
                    wedge.end())
                res.outer_dart = wedge[1];
        }
        res.H.remove_vertex(chi);
        pipeline_assert(res.H.face_of(rec.anchor_dart).size() == 4,
                        "strip: merged face is not a quad");
        res.quads.push_back(rec);
    }
    return res;
}

struct PinSpec {
    bool pinned = false;
    int u = -1, v = -1;
    Point pu, pv, apex;
    double scale = 1000.0;
};

struct Builder {
    std::vector<Point> pos;
    std::vector<uint8_t> placed;
    std::vector<DrawnEdge> curves;
    struct CrossRec {
        int e1, e2;
        Point p;
    };
    std::vector<CrossRec> crossings;
    int fragments_drawn = 0;

    explicit Builder(int n) : pos(n), placed(n, 0) {}

    void place(int v, Point p) {
        if (placed[v]) {
            pipeline_assert(dist(pos[v], p) < 1e-6 * (1.0 + p.len()),
                            "conflicting vertex placement");
            return;
        }
        pos[v] = p;
        placed[v] = 1;
    }
    void emit(int edge, int u, int v, const CubicBezier &c) {
        curves.push_back({edge, u, v, c});
    }
};

void draw_piece(const RacGraph &g, Builder &db, const PinSpec &pin);

double empty_isosceles_height(const Builder &db, Point up, Point vp,
                              Point nhat) {
    double base = dist(up, vp);
    double h = base;
    double floor_h = 1e-6 * base;
    Point mid = 0.5 * (up + vp);
    while (h > floor_h) {
        Point apex = mid + h * nhat;
        Rect tri{std::min({up.x, vp.x, apex.x}),
                 std::min({up.y, vp.y, apex.y}),
                 std::max({up.x, vp.x, apex.x}),
                 std::max({up.y, vp.y, apex.y})};
        bool empty = true;
        for (size_t i = 0; i < db.pos.size() && empty; ++i) {
            if (!db.placed[i]) continue;
            Point p = db.pos[i];
            if (dist(p, up) < 1e-12 * base || dist(p, vp) < 1e-12 * base)
                continue;
            if (point_in_triangle(up, vp, apex, p, -1e-12 * base))
                empty = false;
        }
        std::array<CubicBezier, 3> sides{CubicBezier::segment(up, apex),
                                         CubicBezier::segment(apex, vp),
                                         CubicBezier::segment(up, vp)};
        for (const DrawnEdge &e : db.curves) {
            if (!empty) break;
            if (!e.curve.bbox().overlaps(tri, 1e-12)) continue;
            for (int k = 1; k < 64 && empty; ++k)
                if (point_in_triangle(up, vp, apex, e.curve.point(k / 64.0),
                                      -1e-9 * base))
                    empty = false;
            for (const CubicBezier &side : sides) {
                if (!empty) break;
                IntersectOptions opt;
                opt.tol = 1e-9 * std::max(base, 1.0);
                for (const CurveHit &hit :
                     intersect(e.curve, side, opt).hits) {
                    if (dist(hit.p, up) < 1e-7 * base ||
                        dist(hit.p, vp) < 1e-7 * base)
                        continue;
                    empty = false;
                    break;
                }
            }
        }
        if (empty) return h;
        h *= 0.5;
    }
    throw std::logic_error("rac pipeline: expansion region exhausted");
}

void expand_thick(const StripResult &sr, int t, const Fragment &f,
                  Builder &db) {
    int u = f.u, v = f.v;
    Point up = db.pos[u], vp = db.pos[v];
    int lens_dart = 2 * t + f.lens_side;
    std::vector<int> mwalk = sr.H.face_of(lens_dart);
    std::vector<int> owalk = sr.H.face_of(sr.outer_dart);
    auto corner_side = [&](const std::vector<int> &walk) -> double {
        for (int d : walk) {
            int w = sr.H.dart_from(d);
            if (w == u || w == v) continue;
            double cr = (vp - up).cross(db.pos[w] - up);
            if (std::abs(cr) > 1e-12) return cr > 0 ? 1.0 : -1.0;
        }
        return 0.0;
    };
    bool merged_is_outer =
        std::find(owalk.begin(), owalk.end(), lens_dart) != owalk.end();
    double side = merged_is_outer
                      ? -corner_side(sr.H.face_of(twin(lens_dart)))
                      : corner_side(mwalk);
    pipeline_assert(side != 0.0, "cannot determine expansion side");
    Point nhat = side * (vp - up).orthogonal().normalized();
    double h = empty_isosceles_height(db, up, vp, nhat);
    Point mid = 0.5 * (up + vp);
    Point apex = mid + 0.25 * h * nhat;
    Point bulge_ctrl = mid + 0.75 * h * nhat;

    RacGraph sub = f.graph;
    int bulge_edge = sub.pe.segment(f.seg_bulge).edge;
    sub.pe.remove_segment(f.seg_bulge);
    sub.outer_dart = 2 * f.seg_straight + (1 - f.lens_side);
    PinSpec pin;
    pin.pinned = true;
    pin.u = u;
    pin.v = v;
    pin.pu = up;
    pin.pv = vp;
    pin.apex = apex;
    draw_piece(sub, db, pin);

    db.emit(bulge_edge, u, v, elevate(QuadBezier{up, bulge_ctrl, vp}));
    ++db.fragments_drawn;
}

void draw_piece(const RacGraph &g, Builder &db, const PinSpec &pin) {
    StripResult sr = strip_pairs(g);
    for (const auto &walk : sr.H.faces())
        pipeline_assert(walk.size() == 3 || walk.size() == 4,
                        "stripped face not of length 3 or 4");
    std::vector<int> outer_walk = sr.H.face_of(sr.outer_dart);
    size_t k = outer_walk.size();
    pipeline_assert(k == 3 || k == 4, "outer face not of length 3 or 4");

    std::vector<int> wv(k);
    for (size_t i = 0; i < k; ++i) wv[i] = sr.H.dart_from(outer_walk[i]);

    std::vector<Point> boundary(k);
    std::optional<OutsidePairResult> outer_op;
    const QuadRec *outer_quad = nullptr;
    int outer_E_vertex = -1, outer_F_vertex = -1;
    int outer_A_vertex = -1, outer_B_vertex = -1;

    if (k == 3) {
        int iu = 0, dir = 1;
        Point pa, pb, pc;
        if (pin.pinned) {
            iu = int(std::find(wv.begin(), wv.end(), pin.u) - wv.begin());
            pipeline_assert(iu < int(k),
                            "pinned vertex missing from outer face");
            dir = (wv[(iu + 1) % 3] == pin.v) ? 1 : -1;
            pipeline_assert(wv[(iu + 3 + dir) % 3] == pin.v,
                            "pinned vertices not adjacent on outer face");
            pa = pin.pu;
            pb = pin.pv;
            pc = pin.apex;
        } else {
            double S = pin.scale;
            pa = {0, 0};
            pb = {S, 0};
            pc = {S / 2, S * 0.8660254037844386};
        }
        boundary[iu] = pa;
        boundary[(iu + 3 + dir) % 3] = pb;
        boundary[(iu + 3 + 2 * dir) % 3] = pc;
    } else {
        for (const QuadRec &q : sr.quads) {
            std::vector<int> fw = sr.H.face_of(q.anchor_dart);
            if (std::find(fw.begin(), fw.end(), outer_walk[0]) != fw.end())
                outer_quad = &q;
        }
        pipeline_assert(outer_quad != nullptr,
                        "outer 4-face is not a crossing quad");
        int iu = 0, dir = 1;
        Point A, B, C;
        if (pin.pinned) {
            iu = int(std::find(wv.begin(), wv.end(), pin.u) - wv.begin());
            pipeline_assert(iu < int(k),
                            "pinned vertex missing from outer face");
            dir = (wv[(iu + 1) % 4] == pin.v) ? 1 : -1;
            pipeline_assert(wv[(iu + 4 + dir) % 4] == pin.v,
                            "pinned vertices not adjacent on outer face");
            A = pin.pu;
            B = pin.pv;
            C = pin.apex;
        } else {
            double S = pin.scale;
            A = {0, 0};
            B = {S, 0};
            C = {S / 2, 0.75 * S};
        }
        OutsidePairResult op = outside_pair(A, B, C);
        outer_A_vertex = wv[iu];
        outer_B_vertex = wv[(iu + 4 + dir) % 4];
        outer_E_vertex = wv[(iu + 4 + 2 * dir) % 4];
        outer_F_vertex = wv[(iu + 4 + 3 * dir) % 4];
        boundary[iu] = A;
        boundary[(iu + 4 + dir) % 4] = B;
        boundary[(iu + 4 + 2 * dir) % 4] = op.E;
        boundary[(iu + 4 + 3 * dir) % 4] = op.F;
        auto is_diag = [&](int x, int y) {
            const auto &c = outer_quad->corners;
            return (c[0] == x && c[2] == y) || (c[0] == y && c[2] == x) ||
                   (c[1] == x && c[3] == y) || (c[1] == y && c[3] == x);
        };
        pipeline_assert(is_diag(outer_A_vertex, outer_E_vertex),
                        "trapezoid assignment breaks the diagonal pairing");
        outer_op = op;
    }

    std::vector<Point> positions =
        tutte_positions(sr.H, outer_walk, boundary);
    pipeline_assert(convex_faces_ok(sr.H, positions, sr.outer_dart),
                    "convex-face census failed");
    for (int vtx = 0; vtx < sr.H.vertex_count(); ++vtx)
        if (sr.H.vertex_alive(vtx) && sr.H.degree(vtx) > 0)
            db.place(vtx, positions[vtx]);

    for (int s = 0; s < sr.H.segment_count(); ++s) {
        if (!sr.H.seg_alive(s)) continue;
        const Segment &sg = sr.H.segment(s);
        if (sg.kind == EdgeKind::Thick) continue;
        db.emit(sg.edge, sg.u, sg.v,
                CubicBezier::segment(db.pos[sg.u], db.pos[sg.v]));
    }

    for (const QuadRec &q : sr.quads) {
        if (outer_quad == &q) {
            const OutsidePairResult &op = *outer_op;
            int eAE = (q.corners[0] == outer_A_vertex ||
                       q.corners[2] == outer_A_vertex)
                          ? q.e02
                          : q.e13;
            int eBF = eAE == q.e02 ? q.e13 : q.e02;
            db.emit(eAE, outer_E_vertex, outer_A_vertex, op.curve_AE);
            db.emit(eBF, outer_F_vertex, outer_B_vertex, op.curve_BF);
            db.crossings.push_back({eAE, eBF, op.crossing});
            db.place(q.dummy, op.crossing);
            continue;
        }
        std::array<Point, 4> qp;
        for (int i = 0; i < 4; ++i) qp[i] = db.pos[q.corners[i]];
        InsertedPair ip = insert_crossing_pair(qp);
        db.emit(q.e02, q.corners[0], q.corners[2], ip.straight);
        // the slope curve's parameter direction depends on the internal
        // mirroring; anchor endpoints by proximity
        int cu = dist(ip.curved.p0, qp[1]) < dist(ip.curved.p0, qp[3])
                     ? q.corners[1]
                     : q.corners[3];
        int cv = cu == q.corners[1] ? q.corners[3] : q.corners[1];
        db.emit(q.e13, cu, cv, ip.curved);
        db.crossings.push_back({q.e02, q.e13, ip.crossing});
        db.place(q.dummy, ip.crossing);
    }

    for (const auto &[t, fi] : g.thick)
        expand_thick(sr, t, g.fragments[fi], db);
}

}  // namespace

RacResult draw_rac(const OnePlaneEmbedding &emb) {
    OnePlaneEmbedding aug = augment(emb);
    int total_vertices = aug.pe.vertex_count();
    int input_edge_count = emb.edge_count;
    std::set<int> dropped = aug.dropped_edges;
    RacGraph g = contract(std::move(aug));

    Builder db(total_vertices);
    draw_piece(g, db, PinSpec{});

    RacResult res;
    res.fragments_drawn = db.fragments_drawn;
    res.augmented_vertices = total_vertices - emb.pe.vertex_count();

    res.full.vertices = db.pos;
    res.full.edges = db.curves;
    for (const Builder::CrossRec &c : db.crossings) {
        int i1 = -1, i2 = -1;
        for (int i = 0; i < int(db.curves.size()); ++i) {
            if (db.curves[i].edge == c.e1) i1 = i;
            if (db.curves[i].edge == c.e2) i2 = i;
        }
        res.full.crossings.push_back({i1, i2, c.p});
    }

    std::vector<int> vmap(total_vertices, -1);
    for (int v = 0; v < emb.pe.vertex_count(); ++v) {
        if (emb.pe.vertex_alive(v) &&
            emb.pe.vertex_kind(v) == VertexKind::Real) {
            vmap[v] = int(res.drawing.vertices.size());
            res.drawing.vertices.push_back(db.pos[v]);
        }
    }
    std::vector<int> emap(input_edge_count, -1);
    for (const DrawnEdge &e : db.curves) {
        if (e.edge < 0 || e.edge >= input_edge_count) continue;
        pipeline_assert(emap[e.edge] < 0, "original edge drawn twice");
        pipeline_assert(vmap[e.u] >= 0 && vmap[e.v] >= 0,
                        "original edge touching a helper vertex");
        emap[e.edge] = int(res.drawing.edges.size());
        res.drawing.edges.push_back({e.edge, vmap[e.u], vmap[e.v], e.curve});
    }
    for (int e = 0; e < input_edge_count; ++e)
        pipeline_assert(emap[e] >= 0 || dropped.count(e) > 0,
                        "original edge missing from the drawing");
    for (const Builder::CrossRec &c : db.crossings) {
        if (c.e1 >= input_edge_count || c.e2 >= input_edge_count) continue;
        res.drawing.crossings.push_back({emap[c.e1], emap[c.e2], c.p});
    }
    return res;
}

}  // namespace bezdraw
