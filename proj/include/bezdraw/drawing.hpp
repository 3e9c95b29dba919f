// --------------------------------------------------------------------
// Geometric drawing: vertex positions plus one cubic Bezier per edge.
// --------------------------------------------------------------------
#ifndef BEZDRAW_DRAWING_HPP
#define BEZDRAW_DRAWING_HPP

#include <vector>

#include "bezdraw/geometry.hpp"

namespace bezdraw {

struct DrawnEdge {
    int edge = -1;  // logical edge id, -1 for construction helpers
    int u = -1, v = -1;
    CubicBezier curve;  // curve.point(0) at u, curve.point(1) at v
};

struct DeclaredCrossing {
    int e1 = -1, e2 = -1;  // indices into Drawing::edges
    Point point;
};

struct Drawing {
    std::vector<Point> vertices;
    std::vector<DrawnEdge> edges;
    std::vector<DeclaredCrossing> crossings;

    Rect bounds() const {
        Rect r;
        bool first = true;
        for (const DrawnEdge &e : edges) {
            Rect b = e.curve.bbox();
            if (first) {
                r = b;
                first = false;
            } else {
                r.add({b.x0, b.y0});
                r.add({b.x1, b.y1});
            }
        }
        for (Point p : vertices) {
            if (first) {
                r = {p.x, p.y, p.x, p.y};
                first = false;
            } else {
                r.add(p);
            }
        }
        return r;
    }
};

}  // namespace bezdraw

#endif
