// --------------------------------------------------------------------
// Combinatorial planar multigraph embeddings (rotation systems) and the
// 1-plane embedding built on top of them. Crossings are degree-4 dummy
// vertices of the planarization; a crossed edge contributes two planar
// segments carrying the same logical edge id.
// --------------------------------------------------------------------
#ifndef BEZDRAW_EMBEDDING_HPP
#define BEZDRAW_EMBEDDING_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bezdraw/geometry.hpp"

namespace bezdraw {

enum class VertexKind : uint8_t { Real, CrossDummy, StarHelper };
enum class EdgeKind : uint8_t { Original, KiteHelper, StarHelper, Thick };

// Darts come in twin pairs: segment s owns darts 2s and 2s+1.
inline int twin(int dart) { return dart ^ 1; }
inline int dart_seg(int dart) { return dart >> 1; }

struct Segment {
    int u = -1, v = -1;     // endpoints of darts 2s (u->v) and 2s+1 (v->u)
    int edge = -1;          // logical edge id; halves of a crossed edge share it
    EdgeKind kind = EdgeKind::Original;
    bool alive = false;
};

//! Planar multigraph as a rotation system. Faces are derived walks: the
//! successor of dart d inside its face is the rotation predecessor of
//! twin(d) at the head of d, which makes interior faces counterclockwise.
class PlanarEmbedding {
  public:
    int add_vertex(VertexKind kind = VertexKind::Real);
    int vertex_count() const { return int(vkind_.size()); }
    bool vertex_alive(int v) const { return valive_[v]; }
    VertexKind vertex_kind(int v) const { return vkind_[v]; }
    void set_vertex_kind(int v, VertexKind k) { vkind_[v] = k; }

    int segment_count() const { return int(segs_.size()); }
    const Segment &segment(int s) const { return segs_[s]; }
    bool seg_alive(int s) const { return segs_[s].alive; }
    void set_edge_kind(int s, EdgeKind k) { segs_[s].kind = k; }

    int dart_from(int d) const { return d & 1 ? segs_[d >> 1].v : segs_[d >> 1].u; }
    int dart_to(int d) const { return d & 1 ? segs_[d >> 1].u : segs_[d >> 1].v; }
    const std::vector<int> &rotation(int v) const { return rot_[v]; }
    int degree(int v) const { return int(rot_[v].size()); }

    //! First segment: installs both darts at the back of each rotation.
    int add_isolated_segment(int u, int v, int edge, EdgeKind kind);
    //! Split the face containing darts a and b (a at vertex x, b at vertex
    //! y, both on one face walk) with a new segment x-y. Returns the new
    //! segment; its dart 2s runs x->y and lies on the face piece [2s, b,...].
    int split_face(int dart_a, int dart_b, int edge, EdgeKind kind);
    //! Attach a fresh pendant vertex w inside the face at the corner of
    //! dart_a (new dart inserted rotation-after dart_a). Returns segment.
    int add_pendant(int dart_a, int w, int edge, EdgeKind kind);
    //! Remove one segment; merges its two faces.
    void remove_segment(int s);
    //! Remove a vertex and all incident segments.
    void remove_vertex(int v);
    //! Insert an existing detached segment's darts at given rotation slots.
    void splice_segment(int s, int u, int pos_u, int v, int pos_v);
    int rotation_index(int v, int dart) const;

    //! Face walk containing dart d (d first).
    std::vector<int> face_of(int d) const;
    //! All face walks, each starting at its smallest dart.
    std::vector<std::vector<int>> faces() const;
    int next_in_face(int d) const;

    int alive_vertex_count() const;
    int alive_segment_count() const;
    bool connected() const;
    //! Genus-0 check: V - E + F == 2 on the alive subgraph (connected).
    bool euler_ok() const;

    //! Build from explicit rotation tables: segs[i] = (u, v, edge, kind),
    //! rot_segids[v] = ccw order of incident segment indices at v. Every
    //! segment must appear exactly once at each endpoint.
    static PlanarEmbedding from_rotations(
        const std::vector<VertexKind> &kinds,
        const std::vector<std::tuple<int, int, int, EdgeKind>> &segs,
        const std::vector<std::vector<int>> &rot_segids);

  private:
    std::vector<Segment> segs_;
    std::vector<std::vector<int>> rot_;
    std::vector<VertexKind> vkind_;
    std::vector<uint8_t> valive_;
};

// --------------------------------------------------------------------

struct CrossingPair {
    int edge1 = -1, edge2 = -1;  // logical edges that cross
    int dummy = -1;              // planarization vertex
};

//! A 1-plane combinatorial embedding: planarization + crossing registry.
struct OnePlaneEmbedding {
    PlanarEmbedding pe;
    std::vector<CrossingPair> pairs;
    int outer_dart = -1;      // outer face = face_of(outer_dart)
    int n_input_vertices = 0; // vertex ids < this came from the input
    int edge_count = 0;       // logical edges 0..edge_count-1
    std::set<int> dropped_edges;  // removed by augmentation (parallel+crossed)

    //! Structural validation of every invariant; throws StructureError
    //! with a diagnostic naming the violated one.
    void validate() const;
    //! Endpoints of a logical edge (for crossed edges, the real endpoints).
    std::pair<int, int> edge_endpoints(int edge) const;
    //! Segments carrying a logical edge (1, or 2 when crossed).
    std::vector<int> edge_segments(int edge) const;
    bool edge_crossed(int edge) const;
};

//! Deterministic test-corpus generator: a random planar triangulation by
//! repeated vertex insertion, with disjoint pairs of adjacent internal
//! faces merged into kite crossings up to the requested fraction.
OnePlaneEmbedding gen_one_planar(int n, double crossing_fraction,
                                 uint64_t seed);

}  // namespace bezdraw

#endif
