#include "netgeo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "netgeo/errors.hpp"
#include "netgeo/rng.hpp"

namespace netgeo {

std::vector<double> shortest_paths_from(const PlanarNetwork& net, int source) {
  const size_t n = net.nodes.size();
  if (source < 0 || static_cast<size_t>(source) >= n)
    throw InvalidArgument("shortest_paths_from: source out of range");
  if (net.adjacency.size() != n)
    throw InvalidArgument("shortest_paths_from: adjacency not built");
  std::vector<double> dist_to(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist_to[static_cast<size_t>(source)] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist_to[static_cast<size_t>(u)]) continue;  // stale entry
    for (auto [v, w] : net.adjacency[static_cast<size_t>(u)]) {
      double nd = d + w;
      if (nd < dist_to[static_cast<size_t>(v)]) {
        dist_to[static_cast<size_t>(v)] = nd;
        heap.push({nd, v});
      }
    }
  }
  return dist_to;
}

namespace {

double route_between_nodes(const PlanarNetwork& net, int node_a, int node_b) {
  auto sp = shortest_paths_from(net, node_a);
  double d = sp[static_cast<size_t>(node_b)];
  if (!std::isfinite(d)) throw Disconnected("route_length: points not connected");
  double straight = dist(net.nodes[static_cast<size_t>(node_a)],
                         net.nodes[static_cast<size_t>(node_b)]);
  if (d < straight - 1e-9 * (1.0 + straight))
    throw Error("route_length: path shorter than the straight line (corrupt network)");
  return d;
}

}  // namespace

double route_length(const PlanarNetwork& net, int point_a, int point_b) {
  const int np = static_cast<int>(net.point_nodes.size());
  if (point_a < 0 || point_a >= np || point_b < 0 || point_b >= np)
    throw InvalidArgument("route_length: point index out of range");
  return route_between_nodes(net, net.point_nodes[static_cast<size_t>(point_a)],
                             net.point_nodes[static_cast<size_t>(point_b)]);
}

double route_length(const PlanarNetwork& net, Point a, Point b) {
  return route_between_nodes(net, net.find_node(a), net.find_node(b));
}

namespace {

struct Accumulator {
  double sum = 0.0, sumsq = 0.0, max_val = 0.0;
  long n = 0;
  void add(double x) {
    sum += x;
    sumsq += x * x;
    max_val = std::max(max_val, x);
    ++n;
  }
  double mean() const { return n ? sum / n : 0.0; }
  double se() const {
    if (n < 2) return 0.0;
    double var = std::max(0.0, (sumsq - sum * sum / n) / (n - 1));
    return std::sqrt(var / n);
  }
};

}  // namespace

std::vector<std::pair<int, int>> plan_pairs(const PairSamplePlan& plan, int np) {
  if (np < 2) throw InvalidArgument("plan_pairs: need at least two points");

  std::vector<std::pair<int, int>> pairs;
  if (plan.mode == PairSamplePlan::Mode::AllPairs) {
    if (np > 2000)
      throw InvalidArgument("pair_stats: all-pairs limited to 2000 points; sample pairs instead");
    pairs.reserve(static_cast<size_t>(np) * (np - 1) / 2);
    for (int i = 0; i < np; ++i)
      for (int j = i + 1; j < np; ++j) pairs.push_back({i, j});
  } else {
    long max_pairs = static_cast<long>(np) * (np - 1) / 2;
    if (plan.count <= 0 || plan.count > max_pairs)
      throw InvalidArgument("pair_stats: pair count must be in [1, n*(n-1)/2]");
    Rng rng(plan.seed);
    std::vector<uint64_t> seen;
    seen.reserve(static_cast<size_t>(plan.count));
    while (static_cast<int>(pairs.size()) < plan.count) {
      int i = static_cast<int>(rng.below(static_cast<uint64_t>(np)));
      int j = static_cast<int>(rng.below(static_cast<uint64_t>(np)));
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      uint64_t key = (static_cast<uint64_t>(i) << 32) | static_cast<uint64_t>(j);
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      pairs.push_back({i, j});
    }
  }
  // Group by source so each distinct source runs Dijkstra once.
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

StatReport pair_stats(const PlanarNetwork& net, const PairSamplePlan& plan) {
  const int np = static_cast<int>(net.point_nodes.size());
  std::vector<std::pair<int, int>> pairs = plan_pairs(plan, np);

  StatReport report;
  Accumulator excess, ratio;
  size_t a = 0;
  while (a < pairs.size()) {
    size_t b = a;
    while (b < pairs.size() && pairs[b].first == pairs[a].first) ++b;
    int src = pairs[a].first;
    auto sp = shortest_paths_from(net, net.point_nodes[static_cast<size_t>(src)]);
    Point ps = net.nodes[static_cast<size_t>(net.point_nodes[static_cast<size_t>(src)])];
    for (size_t k = a; k < b; ++k) {
      int dst = pairs[k].second;
      Point pd = net.nodes[static_cast<size_t>(net.point_nodes[static_cast<size_t>(dst)])];
      double euclid = dist(ps, pd);
      if (euclid <= 1e-9) {
        ++report.pairs_skipped_coincident;
        continue;
      }
      double route = sp[static_cast<size_t>(net.point_nodes[static_cast<size_t>(dst)])];
      if (!std::isfinite(route)) throw Disconnected("pair_stats: disconnected point pair");
      // Tiny negative values are numeric noise from node snapping.
      excess.add(std::max(0.0, route - euclid));
      ratio.add(std::max(0.0, route / euclid - 1.0));
    }
    a = b;
  }
  if (excess.n == 0)
    throw CoincidentPoints("pair_stats: every sampled pair was coincident");
  report.mean_excess = excess.mean();
  report.se_excess = excess.se();
  report.max_excess = excess.max_val;
  report.mean_ratio = ratio.mean();
  report.se_ratio = ratio.se();
  report.max_ratio = ratio.max_val;
  report.pairs_used = excess.n;
  return report;
}

const char* reference_law_name(ReferenceLaw law) {
  return law == ReferenceLaw::UniformSquare ? "UniformSquare" : "UniformDisk";
}

double equidist_cost_between(const std::vector<Point>& pts,
                             const std::vector<Point>& ref, double L) {
  const int n = static_cast<int>(pts.size());
  if (n == 0 || ref.size() != pts.size())
    throw SizeMismatch("equidist_cost_between: point sets must be nonempty and equal-size");
  if (!(L > 0.0)) throw InvalidArgument("equidist_cost_between: L must be positive");
  std::vector<std::vector<double>> cost(static_cast<size_t>(n),
                                        std::vector<double>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cost[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          std::min(1.0, dist(pts[static_cast<size_t>(i)], ref[static_cast<size_t>(j)]) / L);
  return assignment_cost(cost) / n;
}

EquidistReport equidist_cost(const Configuration& config, double L,
                             ReferenceLaw reference, int reference_sample_size,
                             uint64_t seed) {
  config.validate();
  if (reference_sample_size != config.n())
    throw SizeMismatch("equidist_cost: reference sample size must equal n");
  constexpr double kPi = 3.14159265358979323846;
  Rng rng(seed);
  std::vector<Point> ref;
  ref.reserve(static_cast<size_t>(config.n()));
  if (reference == ReferenceLaw::UniformSquare) {
    for (int i = 0; i < config.n(); ++i)
      ref.push_back({config.side * rng.uniform(), config.side * rng.uniform()});
  } else {
    // Disk of the same area as the window, centered in it.
    const double radius = config.side / std::sqrt(kPi);
    const Point c{0.5 * config.side, 0.5 * config.side};
    for (int i = 0; i < config.n(); ++i) {
      double r = radius * std::sqrt(rng.uniform());
      double theta = 2.0 * kPi * rng.uniform();
      ref.push_back({c.x + r * std::cos(theta), c.y + r * std::sin(theta)});
    }
  }
  EquidistReport report;
  report.L = L;
  report.reference = reference;
  report.reference_sample_size = reference_sample_size;
  report.seed = seed;
  report.cost = equidist_cost_between(config.points, ref, L);
  return report;
}

double box_count_equidist(const Configuration& config, double lambda) {
  config.validate();
  if (!(lambda > 0.0)) throw InvalidArgument("box_count_equidist: lambda must be positive");
  double q = config.side / lambda;
  int k = static_cast<int>(std::llround(q));
  if (k < 1 || std::abs(q - k) > 1e-9 * std::max(1.0, q))
    throw NonIntegralRatio("box_count_equidist: window side must be an integer multiple of lambda");
  std::vector<long> counts(static_cast<size_t>(k) * k, 0);
  for (const Point& p : config.points) {
    int ix = std::clamp(static_cast<int>(std::floor(p.x / lambda)), 0, k - 1);
    int iy = std::clamp(static_cast<int>(std::floor(p.y / lambda)), 0, k - 1);
    ++counts[static_cast<size_t>(iy) * k + ix];
  }
  const double expected = lambda * lambda;
  double sum = 0.0;
  for (long c : counts) sum += std::abs(static_cast<double>(c) - expected);
  return sum / config.n();
}

}  // namespace netgeo
