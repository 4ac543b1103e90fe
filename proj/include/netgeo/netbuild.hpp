#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netgeo/geom.hpp"

namespace netgeo {

// Point configuration in the square window [0, side]^2. The canonical density
// is one point per unit area (side = sqrt(n)), which is what the uniform
// generator produces.
struct Configuration {
  std::vector<Point> points;
  double side = 0.0;

  int n() const { return static_cast<int>(points.size()); }
  // Throws unless side > 0, n >= 2 and every point lies in the window.
  void validate() const;
};

// n points uniform in [0, sqrt(n)]^2, deterministic in the seed.
Configuration uniform_configuration(int n, uint64_t seed);

enum class Layer : int {
  Tree = 0,
  MediumGrid = 1,
  HotspotCell = 2,
  HotspotConnector = 3,
  PoissonLine = 4,
};
const char* layer_name(Layer layer);

struct TaggedSegment {
  Segment seg;
  Layer layer;
};

// Construction parameters: Poisson line intensity, medium grid pitch s, small
// (hot-spot) grid pitch t, RNG seed for the line layer. side/s and s/t must be
// integral for the grids to nest.
struct BuildParams {
  double intensity = 0.0;
  double s = 1.0;
  double t = 1.0;
  uint64_t seed = 0;
};

// Pitches used when the caller does not choose: s ~ (ln n)^{1/3} and
// t ~ (ln n)^{-1/6} * s, both rounded so that side/s and s/t are integers.
BuildParams default_build_params(int n, double side);

// Straight-line graph after planarization: edges meet only at shared nodes.
struct PlanarNetwork {
  struct Edge {
    int u, v;
    double length;
    Layer layer;
  };
  std::vector<Point> nodes;
  std::vector<Edge> edges;
  std::vector<std::vector<std::pair<int, double>>> adjacency;  // (neighbor, length)
  std::vector<int> point_nodes;  // node index of each configuration point

  void build_adjacency();
  double total_length() const;
  // Node index whose coordinates match q within tol; NodeMismatch otherwise.
  int find_node(Point q, double tol = 1e-9) const;
};

// Per-layer length bookkeeping measured on the resolved (overlap-free) input
// segments, so the grid formula stays exact. baseline_tree_length is the raw
// Euclidean spanning tree total before any overlap trimming.
struct LengthAccounting {
  double tree = 0.0;
  double medium_grid = 0.0;
  double hotspot_cell = 0.0;
  double hotspot_connector = 0.0;
  double poisson_line = 0.0;
  double total = 0.0;
  double baseline_tree_length = 0.0;
};

// Euclidean minimum spanning tree (exact, O(n^2) Prim). Coincident points are
// a contract violation (CoincidentPoints); merge first.
std::vector<Segment> emst_edges(const std::vector<Point>& pts);

// Medium grid: all vertical and horizontal lines of pitch s spanning the
// window, boundaries included. side/s must be integral within 1e-9
// (NonIntegralRatio). Total length is exactly 2*(1 + side/s)*side.
std::vector<Segment> medium_grid(double side, double s);

// Hot-spot treatment on the small grid of pitch t (side/t integral): every
// t-cell containing two or more points contributes its four perimeter sides,
// and each point in such a cell gets a perpendicular connector to the nearest
// point of the cell perimeter (length <= t/2, zero-length connectors for
// points already on the perimeter are skipped).
struct HotspotResult {
  std::vector<Rect> cells;
  std::vector<Segment> cell_sides;   // deduplicated across adjacent hot cells
  std::vector<Segment> connectors;
};
HotspotResult hotspot_cells(const Configuration& config, double t);

// Collapses collinear overlaps in a tagged segment soup: where several
// segments share a supporting line and overlap, the portion is claimed by the
// highest-priority layer (MediumGrid > HotspotCell > HotspotConnector > Tree >
// PoissonLine) and emitted exactly once. Non-overlapping input passes through.
std::vector<TaggedSegment> resolve_collinear_overlaps(
    const std::vector<TaggedSegment>& input);

// Nodes at all endpoints and pairwise intersections (T-junctions split the
// segment they land on); every input segment becomes a chain of edges. Total
// edge length equals total input length within 1e-6 relative. Collinear
// overlapping input throws CollinearOverlap; run resolve_collinear_overlaps
// first for soups that may contain them.
PlanarNetwork planarize(const std::vector<TaggedSegment>& segments);

// Full construction: spanning tree + medium grid + hot-spot treatment +
// Poisson line chords, overlap-resolved, planarized, with configuration
// points mapped to network nodes. Points within 1e-9 of small-grid lines are
// snapped to them first; coincident points are merged (counted in
// merged_points). All configuration points end up in one connected component
// (Disconnected otherwise -- cannot happen for a valid configuration since
// the tree spans them).
struct BuildResult {
  PlanarNetwork network;
  LengthAccounting accounting;
  int merged_points = 0;
};
BuildResult build_network(const Configuration& config, const BuildParams& params);

}  // namespace netgeo
