#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "netgeo/netbuild.hpp"

namespace netgeo {

// Shortest-path lengths from `source` to every node (binary-heap Dijkstra);
// unreachable nodes get +infinity.
std::vector<double> shortest_paths_from(const PlanarNetwork& net, int source);

// Network route length between two configuration points (by index into
// point_nodes) or between two explicit node locations (NodeMismatch if a
// point is not a node). Always >= the straight-line distance; Disconnected
// if no path exists.
double route_length(const PlanarNetwork& net, int point_a, int point_b);
double route_length(const PlanarNetwork& net, Point a, Point b);

// Which point pairs enter the route statistics.
struct PairSamplePlan {
  enum class Mode { AllPairs, RandomPairs } mode = Mode::AllPairs;
  int count = 0;       // RandomPairs only: how many distinct pairs
  uint64_t seed = 0;   // RandomPairs only
  static PairSamplePlan all_pairs() { return {}; }
  static PairSamplePlan random_pairs(int count, uint64_t seed) {
    return {Mode::RandomPairs, count, seed};
  }
};

// Materialized pair list (i < j, sorted by source) the plan selects for n
// points — exactly the pairs pair_stats evaluates. AllPairs refuses n > 2000.
std::vector<std::pair<int, int>> plan_pairs(const PairSamplePlan& plan, int n);

// Route-quality statistics over distinct point pairs:
//   excess = mean(route - euclid),  ratio = mean(route/euclid - 1).
// Both are nonnegative. Pairs closer than 1e-9 in the plane are skipped and
// counted (the ratio is undefined there); if no usable pair remains the
// computation throws CoincidentPoints. AllPairs refuses n > 2000 (quadratic
// guard); use RandomPairs (distinct pairs, without replacement) beyond that.
struct StatReport {
  double mean_excess = 0.0;
  double se_excess = 0.0;
  double mean_ratio = 0.0;
  double se_ratio = 0.0;
  double max_excess = 0.0;
  double max_ratio = 0.0;
  long pairs_used = 0;
  long pairs_skipped_coincident = 0;
};
StatReport pair_stats(const PlanarNetwork& net, const PairSamplePlan& plan);

// Reference law for the equidistribution test: uniform on the window square,
// or uniform on the disk of the same area centered in the window.
enum class ReferenceLaw { UniformSquare, UniformDisk };
const char* reference_law_name(ReferenceLaw law);

struct EquidistReport {
  double L = 0.0;
  double cost = 0.0;  // in [0, 1]; 0 = perfectly matched
  ReferenceLaw reference = ReferenceLaw::UniformSquare;
  int reference_sample_size = 0;
  uint64_t seed = 0;
};

// Optimal-coupling truncated transport cost between two equal-size point
// sets: min over perfect matchings of mean(min(1, |x_i - y_j| / L)), solved
// exactly by assignment. SizeMismatch if sizes differ; cubic in n.
double equidist_cost_between(const std::vector<Point>& pts,
                             const std::vector<Point>& ref, double L);

// Equidistribution cost of a configuration against an n-point reference
// sample drawn with `seed` from the given law. reference_sample_size must
// equal the configuration size (equal-size matching; SizeMismatch).
EquidistReport equidist_cost(const Configuration& config, double L,
                             ReferenceLaw reference, int reference_sample_size,
                             uint64_t seed);

// Box-count equidistribution discrepancy: partition the window into boxes of
// side lambda (side/lambda must be integral; NonIntegralRatio) and return
// (1/n) * sum over boxes of |count - lambda^2|, the expected count under the
// canonical one-point-per-unit-area density.
double box_count_equidist(const Configuration& config, double lambda);

// Minimum-cost perfect assignment (Hungarian algorithm, O(n^3)); returns the
// total cost. The matrix must be square and nonempty (SizeMismatch).
double assignment_cost(const std::vector<std::vector<double>>& cost);

}  // namespace netgeo
