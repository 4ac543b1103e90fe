// Independent reference implementations used only by tests. These deliberately
// take different algorithmic routes than the library (vertex enumeration
// instead of incremental clipping, Cramer solves, parametric clamping,
// exhaustive search) so that agreement is meaningful.
#pragma once

#include <optional>
#include <vector>

#include "netgeo/geom.hpp"

namespace oracle {

using netgeo::Line;
using netgeo::Point;
using netgeo::Rect;
using netgeo::Segment;

// Plain sign of the normal-form evaluation, no tolerance logic.
double line_eval(const Line& l, Point q);

// Line/line intersection by direct Cramer solve on the two normal equations;
// absent when |determinant| is tiny.
std::optional<Point> cramer_intersect(const Line& a, const Line& b);

// Segment intersection via projections onto the supporting line, clamped
// parameter checks, and explicit collinear handling. Returns:
//   kind = 0 none, 1 point, 2 overlap (more than a point).
struct SegIntersection {
  int kind = 0;
  Point point;
};
SegIntersection segment_intersect_param(const Segment& s1, const Segment& s2,
                                        double tol = 1e-9);

// Chord of a line in a rectangle computed by Sutherland-Hodgman clipping of
// the rectangle against both half-planes of the line, then collapsing the
// (degenerate) polygon to its two extreme points.
std::optional<Segment> clip_line_rect_sh(const Line& l, const Rect& r);

// The cell of the line arrangement (plus window edges) containing v1 and v2,
// computed by brute-force vertex enumeration: all pairwise intersection
// candidates filtered by every half-plane constraint, then ordered by angle.
// Lines separating v1 from v2 are dropped, mirroring the deletion step.
std::vector<Point> arrangement_cell_vertices(const std::vector<Line>& lines,
                                             Point v1, Point v2, const Rect& window,
                                             double tol = 1e-9);

// True if the two vertex lists agree as cyclic sequences up to direction and
// a positional tolerance.
bool same_cyclic_polygon(const std::vector<Point>& a, const std::vector<Point>& b,
                         double tol);

// Exhaustive minimum spanning tree total length over all spanning trees
// (Pruefer enumeration); only for n <= 8.
double mst_length_exhaustive(const std::vector<Point>& pts);

// All-pairs shortest paths by Floyd-Warshall on an explicit distance matrix.
// nodes: count; edges: (u, v, length) undirected.
std::vector<std::vector<double>> floyd_warshall(
    int nodes, const std::vector<std::tuple<int, int, double>>& edges);

// Minimum-cost perfect matching by brute force over all permutations (n <= 8).
double assignment_bruteforce(const std::vector<std::vector<double>>& cost);

}  // namespace oracle
