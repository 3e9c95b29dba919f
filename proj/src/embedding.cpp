#include "bezdraw/embedding.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace bezdraw {

namespace {
void check(bool cond, const std::string &msg) {
    if (!cond) throw StructureError(msg);
}
}  // namespace

int PlanarEmbedding::add_vertex(VertexKind kind) {
    vkind_.push_back(kind);
    valive_.push_back(1);
    rot_.emplace_back();
    return int(vkind_.size()) - 1;
}

int PlanarEmbedding::add_isolated_segment(int u, int v, int edge,
                                          EdgeKind kind) {
    int s = int(segs_.size());
    segs_.push_back({u, v, edge, kind, true});
    rot_[u].push_back(2 * s);
    rot_[v].push_back(2 * s + 1);
    return s;
}

int PlanarEmbedding::rotation_index(int v, int dart) const {
    const auto &r = rot_[v];
    for (size_t i = 0; i < r.size(); ++i)
        if (r[i] == dart) return int(i);
    throw StructureError("rotation_index: dart not at vertex");
}

int PlanarEmbedding::split_face(int dart_a, int dart_b, int edge,
                                EdgeKind kind) {
    int x = dart_from(dart_a), y = dart_from(dart_b);
    int s = int(segs_.size());
    segs_.push_back({x, y, edge, kind, true});
    int n1 = 2 * s, n2 = 2 * s + 1;
    // n1 rotation-after dart_a at x, n2 rotation-after dart_b at y; the
    // face then splits into [n1, dart_b, ...] and [n2, dart_a, ...].
    auto &rx = rot_[x];
    rx.insert(rx.begin() + rotation_index(x, dart_a) + 1, n1);
    auto &ry = rot_[y];
    ry.insert(ry.begin() + rotation_index(y, dart_b) + 1, n2);
    return s;
}

int PlanarEmbedding::add_pendant(int dart_a, int w, int edge, EdgeKind kind) {
    int x = dart_from(dart_a);
    int s = int(segs_.size());
    segs_.push_back({x, w, edge, kind, true});
    auto &rx = rot_[x];
    rx.insert(rx.begin() + rotation_index(x, dart_a) + 1, 2 * s);
    rot_[w].push_back(2 * s + 1);
    return s;
}

void PlanarEmbedding::remove_segment(int s) {
    check(segs_[s].alive, "remove_segment: already dead");
    for (int d : {2 * s, 2 * s + 1}) {
        auto &r = rot_[dart_from(d)];
        r.erase(std::find(r.begin(), r.end(), d));
    }
    segs_[s].alive = false;
}

void PlanarEmbedding::remove_vertex(int v) {
    while (!rot_[v].empty()) remove_segment(dart_seg(rot_[v].front()));
    valive_[v] = 0;
}

void PlanarEmbedding::splice_segment(int s, int u, int pos_u, int v,
                                     int pos_v) {
    check(!segs_[s].alive, "splice_segment: segment already installed");
    segs_[s].alive = true;
    segs_[s].u = u;
    segs_[s].v = v;
    rot_[u].insert(rot_[u].begin() + pos_u, 2 * s);
    rot_[v].insert(rot_[v].begin() + pos_v, 2 * s + 1);
}

int PlanarEmbedding::next_in_face(int d) const {
    int t = twin(d);
    int v = dart_from(t);
    const auto &r = rot_[v];
    int i = rotation_index(v, t);
    return r[(i + int(r.size()) - 1) % r.size()];
}

std::vector<int> PlanarEmbedding::face_of(int d) const {
    std::vector<int> walk;
    int cur = d;
    do {
        walk.push_back(cur);
        cur = next_in_face(cur);
        check(walk.size() <= 4 * segs_.size() + 4,
              "face_of: walk does not close");
    } while (cur != d);
    return walk;
}

std::vector<std::vector<int>> PlanarEmbedding::faces() const {
    std::vector<std::vector<int>> out;
    std::vector<uint8_t> seen(2 * segs_.size(), 0);
    for (int d = 0; d < int(2 * segs_.size()); ++d) {
        if (!segs_[d >> 1].alive || seen[d]) continue;
        std::vector<int> walk = face_of(d);
        for (int x : walk) seen[x] = 1;
        out.push_back(std::move(walk));
    }
    return out;
}

int PlanarEmbedding::alive_vertex_count() const {
    int n = 0;
    for (uint8_t a : valive_) n += a;
    return n;
}

int PlanarEmbedding::alive_segment_count() const {
    int n = 0;
    for (const Segment &s : segs_) n += s.alive;
    return n;
}

bool PlanarEmbedding::connected() const {
    int start = -1;
    for (int v = 0; v < vertex_count(); ++v)
        if (valive_[v]) {
            start = v;
            break;
        }
    if (start < 0) return true;
    std::vector<uint8_t> vis(vertex_count(), 0);
    std::vector<int> stack{start};
    vis[start] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int d : rot_[v]) {
            int w = dart_to(d);
            if (!vis[w]) {
                vis[w] = 1;
                stack.push_back(w);
            }
        }
    }
    for (int v = 0; v < vertex_count(); ++v)
        if (valive_[v] && !vis[v]) return false;
    return true;
}

bool PlanarEmbedding::euler_ok() const {
    if (!connected()) return false;
    int V = alive_vertex_count();
    int E = alive_segment_count();
    int F = int(faces().size());
    return V - E + F == 2;
}

PlanarEmbedding PlanarEmbedding::from_rotations(
    const std::vector<VertexKind> &kinds,
    const std::vector<std::tuple<int, int, int, EdgeKind>> &segs,
    const std::vector<std::vector<int>> &rot_segids) {
    check(kinds.size() == rot_segids.size(),
          "from_rotations: kinds/rotations size mismatch");
    PlanarEmbedding pe;
    for (VertexKind k : kinds) pe.add_vertex(k);
    for (auto &[u, v, edge, kind] : segs) {
        check(u >= 0 && u < pe.vertex_count() && v >= 0 &&
                  v < pe.vertex_count() && u != v,
              "from_rotations: bad segment endpoints");
        pe.segs_.push_back({u, v, edge, kind, true});
    }
    std::vector<int> seen(segs.size(), 0);
    for (int v = 0; v < pe.vertex_count(); ++v) {
        for (int si : rot_segids[v]) {
            check(si >= 0 && si < int(segs.size()),
                  "from_rotations: bad segment index");
            const Segment &sg = pe.segs_[si];
            check(sg.u == v || sg.v == v,
                  "from_rotations: segment not incident to vertex");
            pe.rot_[v].push_back(sg.u == v ? 2 * si : 2 * si + 1);
            ++seen[si];
        }
    }
    for (int c : seen)
        check(c == 2, "from_rotations: segment not listed exactly twice");
    return pe;
}

// --------------------------------------------------------------------

void OnePlaneEmbedding::validate() const {
    check(pe.alive_vertex_count() > 0, "embedding has no vertices");
    check(pe.connected(), "embedding is not connected");
    check(pe.euler_ok(), "rotation system is not planar (Euler check fails)");
    std::set<int> dummies;
    std::set<int> crossed_edges;
    for (const CrossingPair &p : pairs) {
        check(p.edge1 != p.edge2, "crossing pair repeats an edge");
        check(crossed_edges.insert(p.edge1).second,
              "edge crossed more than once");
        check(crossed_edges.insert(p.edge2).second,
              "edge crossed more than once");
        check(p.dummy >= 0 && p.dummy < pe.vertex_count() &&
                  pe.vertex_alive(p.dummy),
              "crossing dummy is not a live vertex");
        check(pe.vertex_kind(p.dummy) == VertexKind::CrossDummy,
              "crossing vertex not flagged as dummy");
        check(dummies.insert(p.dummy).second, "dummy shared by two pairs");
        check(pe.degree(p.dummy) == 4, "crossing dummy degree is not 4");
        const auto &r = pe.rotation(p.dummy);
        for (int i = 0; i < 4; ++i) {
            int e1 = pe.segment(dart_seg(r[i])).edge;
            int e2 = pe.segment(dart_seg(r[(i + 1) % 4])).edge;
            int e3 = pe.segment(dart_seg(r[(i + 2) % 4])).edge;
            check(e1 != e2 && e1 == e3,
                  "dummy rotation does not alternate the crossing edges");
            check(e1 == p.edge1 || e1 == p.edge2,
                  "dummy incident to a foreign edge");
        }
    }
    for (int v = 0; v < pe.vertex_count(); ++v)
        if (pe.vertex_alive(v) && pe.vertex_kind(v) == VertexKind::CrossDummy)
            check(dummies.count(v) > 0, "dummy vertex without a crossing pair");
    for (int e = 0; e < edge_count; ++e) {
        if (dropped_edges.count(e)) continue;
        std::vector<int> segs = edge_segments(e);
        if (crossed_edges.count(e))
            check(segs.size() == 2, "crossed edge does not have 2 segments");
        else
            check(segs.size() == 1, "uncrossed edge split into segments");
        if (segs.size() == 1) {
            const Segment &sg = pe.segment(segs[0]);
            check(sg.u != sg.v, "self-loop edge");
        }
    }
    for (const CrossingPair &p : pairs) {
        auto [a, b] = edge_endpoints(p.edge1);
        auto [c, d] = edge_endpoints(p.edge2);
        check(a != b && c != d && a != c && a != d && b != c && b != d,
              "crossing pair edges share an endpoint");
    }
    check(outer_dart >= 0 && outer_dart < 2 * pe.segment_count() &&
              pe.seg_alive(dart_seg(outer_dart)),
          "outer face dart invalid");
}

std::vector<int> OnePlaneEmbedding::edge_segments(int edge) const {
    std::vector<int> out;
    for (int s = 0; s < pe.segment_count(); ++s)
        if (pe.seg_alive(s) && pe.segment(s).edge == edge) out.push_back(s);
    return out;
}

bool OnePlaneEmbedding::edge_crossed(int edge) const {
    for (const CrossingPair &p : pairs)
        if (p.edge1 == edge || p.edge2 == edge) return true;
    return false;
}

std::pair<int, int> OnePlaneEmbedding::edge_endpoints(int edge) const {
    std::vector<int> ends;
    for (int s : edge_segments(edge)) {
        const Segment &sg = pe.segment(s);
        if (pe.vertex_kind(sg.u) != VertexKind::CrossDummy)
            ends.push_back(sg.u);
        if (pe.vertex_kind(sg.v) != VertexKind::CrossDummy)
            ends.push_back(sg.v);
    }
    check(ends.size() == 2, "edge does not have two real endpoints");
    return {ends[0], ends[1]};
}

// --------------------------------------------------------------------
// Generator: random triangulation + kite crossings.

namespace {

//! Insert vertex w inside a face, joined to every corner of its walk.
int star_face(PlanarEmbedding &pe, const std::vector<int> &walk,
              const std::vector<int> &spoke_edges, VertexKind kind,
              EdgeKind ekind) {
    int w = pe.add_vertex(kind);
    int s = pe.add_pendant(walk[0], w, spoke_edges[0], ekind);
    int at_w = 2 * s + 1;  // dart w -> from(walk[0]) on the shrinking face
    for (size_t i = 1; i < walk.size(); ++i) {
        int ns = pe.split_face(at_w, walk[i], spoke_edges[i], ekind);
        at_w = 2 * ns;
    }
    return w;
}

}  // namespace

OnePlaneEmbedding gen_one_planar(int n, double crossing_fraction,
                                 uint64_t seed) {
    check(n >= 4, "gen_one_planar: n must be at least 4");
    check(crossing_fraction >= 0.0 && crossing_fraction <= 1.0,
          "gen_one_planar: crossing_fraction outside [0,1]");
    std::mt19937_64 rng(seed);
    OnePlaneEmbedding emb;
    PlanarEmbedding &pe = emb.pe;
    int next_edge = 0;
    for (int i = 0; i < 3; ++i) pe.add_vertex();
    // base triangle 0-1-2; the face of dart 5 (walking 0->2->1->0) stays
    // the outer face throughout
    pe.add_isolated_segment(0, 1, next_edge++, EdgeKind::Original);
    pe.add_pendant(1, 2, next_edge++, EdgeKind::Original);
    pe.split_face(3, 0, next_edge++, EdgeKind::Original);
    emb.outer_dart = 5;

    for (int v = 3; v < n; ++v) {
        auto fs = pe.faces();
        std::vector<int> internal;
        for (int i = 0; i < int(fs.size()); ++i)
            if (std::find(fs[i].begin(), fs[i].end(), emb.outer_dart) ==
                fs[i].end())
                internal.push_back(i);
        std::uniform_int_distribution<int> pick(0, int(internal.size()) - 1);
        const std::vector<int> &walk = fs[internal[pick(rng)]];
        std::vector<int> spoke_edges;
        for (size_t i = 0; i < walk.size(); ++i)
            spoke_edges.push_back(next_edge++);
        star_face(pe, walk, spoke_edges, VertexKind::Real, EdgeKind::Original);
    }

    // greedy disjoint pairs of adjacent internal triangles, then a
    // fraction-sized prefix becomes kite crossings
    std::vector<int> outer_walk = pe.face_of(emb.outer_dart);
    std::set<int> outer_darts(outer_walk.begin(), outer_walk.end());
    std::vector<int> cand;
    for (int s = 0; s < pe.segment_count(); ++s)
        if (pe.seg_alive(s)) cand.push_back(s);
    std::shuffle(cand.begin(), cand.end(), rng);

    auto adjacent = [&](int a, int b) {
        for (int d : pe.rotation(a))
            if (pe.dart_to(d) == b) return true;
        return false;
    };

    std::set<int> used_darts;
    std::set<std::pair<int, int>> planned_cd;
    std::vector<int> accepted;
    for (int s : cand) {
        int d1 = 2 * s, d2 = 2 * s + 1;
        if (outer_darts.count(d1) || outer_darts.count(d2)) continue;
        std::vector<int> f1 = pe.face_of(d1), f2 = pe.face_of(d2);
        if (f1.size() != 3 || f2.size() != 3) continue;
        bool clash = false;
        for (int d : f1)
            if (used_darts.count(d) || outer_darts.count(d)) clash = true;
        for (int d : f2)
            if (used_darts.count(d) || outer_darts.count(d)) clash = true;
        if (clash) continue;
        int c = pe.dart_from(f1[2]);
        int dd = pe.dart_from(f2[2]);
        if (c == dd || adjacent(c, dd)) continue;
        // crossing diagonals of two earlier kites may already connect c-d
        if (planned_cd.count({std::min(c, dd), std::max(c, dd)})) continue;
        planned_cd.insert({std::min(c, dd), std::max(c, dd)});
        for (int d : f1) used_darts.insert(d);
        for (int d : f2) used_darts.insert(d);
        accepted.push_back(s);
    }
    accepted.resize(size_t(
        std::floor(crossing_fraction * double(accepted.size()) + 1e-9)));

    for (int s : accepted) {
        int edge_ab = pe.segment(s).edge;
        int edge_cd = next_edge++;
        int av = pe.segment(s).u, bv = pe.segment(s).v;
        std::vector<int> f1 = pe.face_of(2 * s);
        int start = f1[1];
        pe.remove_segment(s);
        std::vector<int> quad = pe.face_of(start);
        check(quad.size() == 4, "gen_one_planar: kite merge not a quad");
        std::vector<int> spoke_edges;
        for (int d : quad) {
            int from = pe.dart_from(d);
            spoke_edges.push_back((from == av || from == bv) ? edge_ab
                                                             : edge_cd);
        }
        int chi = star_face(pe, quad, spoke_edges, VertexKind::CrossDummy,
                            EdgeKind::Original);
        emb.pairs.push_back({edge_ab, edge_cd, chi});
    }

    emb.n_input_vertices = pe.vertex_count();
    emb.edge_count = next_edge;
    emb.validate();
    return emb;
}

}  // namespace bezdraw
