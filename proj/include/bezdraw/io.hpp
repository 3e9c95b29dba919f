// --------------------------------------------------------------------
// File formats (JSON), SVG rendering, verification-report serialization.
// --------------------------------------------------------------------
#ifndef BEZDRAW_IO_HPP
#define BEZDRAW_IO_HPP

#include <json.hpp>

#include <iosfwd>
#include <string>

#include "bezdraw/drawing.hpp"
#include "bezdraw/embedding.hpp"
#include "bezdraw/jointbox.hpp"
#include "bezdraw/verifier.hpp"

namespace bezdraw {

using ordered_json = nlohmann::ordered_json;

// EmbeddingFile: {"n", "edges", "rotation", "dummies", "crossing_pairs",
// "outer_face"}; rotation entries are {"e", "end"} at real vertices and
// {"e", "toward"} at crossing dummies.
ordered_json save_embedding(const OnePlaneEmbedding &emb);
OnePlaneEmbedding load_embedding(const ordered_json &j);

// DrawingFile: {"vertices", "edges" [{u, v, ctrl[4]}], "crossings"}.
ordered_json save_drawing(const Drawing &d);
Drawing load_drawing(const ordered_json &j);

// JointBoxFile: {"vertices", "edges" [{a, port_region, port_index, b,
// free_region, bend}]}.
ordered_json save_jointbox(const JointBoxDrawing &jbd);
JointBoxDrawing load_jointbox(const ordered_json &j);

ordered_json report_to_json(const VerificationReport &rep);

//! One cubic path element per edge, control points emitted verbatim with
//! 17 significant digits; the y axis is flipped by a group transform.
void render_svg(const Drawing &d, std::ostream &out,
                bool mark_crossings = false);

// file helpers (throw StructureError on IO or parse problems)
ordered_json read_json_file(const std::string &path);
void write_json_file(const std::string &path, const ordered_json &j);
void write_svg_file(const std::string &path, const Drawing &d,
                    bool mark_crossings = false);

}  // namespace bezdraw

#endif
