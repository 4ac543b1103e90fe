#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "netgeo/errors.hpp"
#include "netgeo/netbuild.hpp"
#include "netgeo/rng.hpp"
#include "netgeo/stats.hpp"
#include "oracles.hpp"

using namespace netgeo;

namespace {

// Network whose nodes are the given points, with explicit edges and the first
// `k` nodes registered as configuration points.
PlanarNetwork make_net(std::vector<Point> nodes,
                       std::vector<std::tuple<int, int>> edges, int k) {
  PlanarNetwork net;
  net.nodes = std::move(nodes);
  for (auto [u, v] : edges)
    net.edges.push_back({u, v, dist(net.nodes[(size_t)u], net.nodes[(size_t)v]),
                         Layer::Tree});
  net.build_adjacency();
  for (int i = 0; i < k; ++i) net.point_nodes.push_back(i);
  return net;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("shortest paths: elbow route known value") {
  // Two points joined through a right-angle elbow: route 7, beeline 5.
  auto net = make_net({{0, 0}, {3, 4}, {3, 0}}, {{0, 2}, {2, 1}}, 2);
  CHECK(route_length(net, 0, 1) == doctest::Approx(7.0));
  CHECK(route_length(net, Point{0, 0}, Point{3, 4}) == doctest::Approx(7.0));
  CHECK_THROWS_AS(route_length(net, Point{9, 9}, Point{0, 0}), NodeMismatch);
  auto sp = shortest_paths_from(net, 0);
  CHECK(sp[0] == 0.0);
  CHECK(sp[2] == doctest::Approx(3.0));
  CHECK(sp[1] == doctest::Approx(7.0));
}

TEST_CASE("shortest paths: straight segment equals Euclid") {
  auto net = make_net({{0, 0}, {5, 0}}, {{0, 1}}, 2);
  CHECK(route_length(net, 0, 1) == doctest::Approx(5.0));
}

TEST_CASE("shortest paths: disconnected and invalid input") {
  auto net = make_net({{0, 0}, {1, 0}, {5, 5}, {6, 5}}, {{0, 1}, {2, 3}}, 4);
  CHECK(std::isinf(shortest_paths_from(net, 0)[2]));
  CHECK_THROWS_AS(route_length(net, 0, 2), Disconnected);
  CHECK_THROWS_AS(route_length(net, 0, 9), InvalidArgument);
  CHECK_THROWS_AS(shortest_paths_from(net, -1), InvalidArgument);
}

TEST_CASE("shortest paths agree with Floyd-Warshall on random planar soups") {
  Rng rng(777);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<TaggedSegment> soup;
    for (int i = 0; i < 8; ++i) {
      Point a{5.0 * rng.uniform(), 5.0 * rng.uniform()};
      Point b{5.0 * rng.uniform(), 5.0 * rng.uniform()};
      if (dist(a, b) < 1e-2) continue;
      soup.push_back({{a, b}, Layer::PoissonLine});
    }
    PlanarNetwork net = planarize(soup);
    if (net.nodes.empty()) continue;
    std::vector<std::tuple<int, int, double>> edges;
    for (const auto& e : net.edges) edges.push_back({e.u, e.v, e.length});
    auto want = oracle::floyd_warshall(static_cast<int>(net.nodes.size()), edges);
    for (int s = 0; s < static_cast<int>(net.nodes.size()); ++s) {
      auto got = shortest_paths_from(net, s);
      for (size_t j = 0; j < got.size(); ++j) {
        if (std::isinf(want[(size_t)s][j])) CHECK(std::isinf(got[j]));
        else CHECK(got[j] == doctest::Approx(want[(size_t)s][j]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("route length symmetry and triangle inequality on a built network") {
  Configuration config = uniform_configuration(40, 31);
  BuildParams params = default_build_params(40, config.side);
  params.intensity = 0.5;
  params.seed = 2;
  BuildResult res = build_network(config, params);
  const PlanarNetwork& net = res.network;
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    int np = static_cast<int>(net.point_nodes.size());
    int a = static_cast<int>(rng.below((uint64_t)np));
    int b = static_cast<int>(rng.below((uint64_t)np));
    int c = static_cast<int>(rng.below((uint64_t)np));
    if (a == b || b == c || a == c) continue;
    double ab = route_length(net, a, b);
    double ba = route_length(net, b, a);
    double bc = route_length(net, b, c);
    double ac = route_length(net, a, c);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
    CHECK(ac <= ab + bc + 1e-9);
    Point pa = net.nodes[(size_t)net.point_nodes[(size_t)a]];
    Point pb = net.nodes[(size_t)net.point_nodes[(size_t)b]];
    CHECK(ab >= dist(pa, pb) - 1e-9);
  }
}

TEST_CASE("pair statistics: collinear points have zero excess and ratio") {
  auto net = make_net({{0, 0}, {1, 0}, {3, 0}, {7, 0}},
                      {{0, 1}, {1, 2}, {2, 3}}, 4);
  StatReport rep = pair_stats(net, PairSamplePlan::all_pairs());
  CHECK(rep.pairs_used == 6);
  CHECK(rep.mean_excess == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.mean_ratio == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.max_ratio == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.pairs_skipped_coincident == 0);
}

TEST_CASE("pair statistics: elbow knowns (excess 2/3, ratio 0.4 on its pair)") {
  // Three points, only the two elbow edges: pairs (0,2) and (2,1) ride along
  // edges (excess 0), pair (0,1) pays 7 for a beeline of 5.
  auto net = make_net({{0, 0}, {3, 4}, {3, 0}}, {{0, 2}, {2, 1}}, 3);
  StatReport rep = pair_stats(net, PairSamplePlan::all_pairs());
  CHECK(rep.pairs_used == 3);
  CHECK(rep.mean_excess == doctest::Approx(2.0 / 3.0));
  CHECK(rep.max_excess == doctest::Approx(2.0));
  CHECK(rep.mean_ratio == doctest::Approx(0.4 / 3.0));
  CHECK(rep.max_ratio == doctest::Approx(0.4));
}

TEST_CASE("pair statistics: sampled pairs cover all pairs when count allows") {
  auto net = make_net({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}},
                      {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {2, 4}}, 5);
  StatReport all = pair_stats(net, PairSamplePlan::all_pairs());
  StatReport sampled = pair_stats(net, PairSamplePlan::random_pairs(10, 5));
  CHECK(all.pairs_used == 10);
  CHECK(sampled.pairs_used == 10);
  CHECK(sampled.mean_excess == doctest::Approx(all.mean_excess));
  CHECK(sampled.mean_ratio == doctest::Approx(all.mean_ratio));

  StatReport s1 = pair_stats(net, PairSamplePlan::random_pairs(4, 11));
  StatReport s2 = pair_stats(net, PairSamplePlan::random_pairs(4, 11));
  CHECK(s1.mean_excess == s2.mean_excess);
  CHECK(s1.mean_ratio == s2.mean_ratio);
}

TEST_CASE("pair statistics: sampled mean near all-pairs mean on a 200-point net") {
  Configuration config = uniform_configuration(200, 66);
  BuildParams params = default_build_params(200, config.side);
  params.intensity = 0.4;
  params.seed = 5;
  BuildResult res = build_network(config, params);
  StatReport all = pair_stats(res.network, PairSamplePlan::all_pairs());
  StatReport sampled = pair_stats(res.network, PairSamplePlan::random_pairs(500, 9));
  CHECK(std::abs(sampled.mean_excess - all.mean_excess) <= 3.0 * sampled.se_excess);
  CHECK(std::abs(sampled.mean_ratio - all.mean_ratio) <= 3.0 * sampled.se_ratio);
  CHECK(all.mean_excess >= 0.0);
  CHECK(all.mean_ratio >= 0.0);
}

TEST_CASE("pair statistics: guards") {
  auto net = make_net({{0, 0}, {1, 0}}, {{0, 1}}, 2);
  CHECK_THROWS_AS(pair_stats(net, PairSamplePlan::random_pairs(2, 0)), InvalidArgument);
  CHECK_THROWS_AS(pair_stats(net, PairSamplePlan::random_pairs(0, 0)), InvalidArgument);

  PlanarNetwork big = make_net({{0, 0}, {1, 0}}, {{0, 1}}, 2);
  big.point_nodes.assign(2001, 0);
  CHECK_THROWS_AS(pair_stats(big, PairSamplePlan::all_pairs()), InvalidArgument);
}

TEST_CASE("pair statistics: coincident pairs are skipped and counted") {
  auto net = make_net({{0, 0}, {3, 4}, {3, 0}}, {{0, 2}, {2, 1}}, 2);
  net.point_nodes.push_back(0);  // third point sits on the same node as the first
  StatReport rep = pair_stats(net, PairSamplePlan::all_pairs());
  CHECK(rep.pairs_skipped_coincident == 1);
  CHECK(rep.pairs_used == 2);
  // Both usable pairs join the duplicated elbow endpoints: excess 2 each.
  CHECK(rep.mean_excess == doctest::Approx(2.0));

  // Only coincident pairs -> no usable pair at all.
  auto degenerate = make_net({{0, 0}, {1, 0}}, {{0, 1}}, 1);
  degenerate.point_nodes.push_back(0);
  CHECK_THROWS_AS(pair_stats(degenerate, PairSamplePlan::all_pairs()), CoincidentPoints);
}

TEST_CASE("pair statistics: rigid motion leaves route statistics unchanged") {
  Rng rng(4242);
  std::vector<TaggedSegment> soup, moved;
  double c = std::cos(0.7), s = std::sin(0.7);
  Point shift{13.0, -4.0};
  for (int i = 0; i < 12; ++i) {
    Point a{4.0 * rng.uniform(), 4.0 * rng.uniform()};
    Point b{4.0 * rng.uniform(), 4.0 * rng.uniform()};
    if (dist(a, b) < 1e-2) continue;
    soup.push_back({{a, b}, Layer::Tree});
    auto rot = [&](Point p) {
      return Point{c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y};
    };
    moved.push_back({{rot(a), rot(b)}, Layer::Tree});
  }
  PlanarNetwork n1 = planarize(soup);
  PlanarNetwork n2 = planarize(moved);
  REQUIRE(n1.nodes.size() == n2.nodes.size());
  int k = std::min<int>(5, static_cast<int>(n1.nodes.size()));
  for (int i = 0; i < k; ++i) {
    n1.point_nodes.push_back(i);
    n2.point_nodes.push_back(i);
  }
  // Guard against disconnected node samples: keep only reachable picks.
  auto sp = shortest_paths_from(n1, 0);
  bool all_reachable = true;
  for (int i = 0; i < k; ++i)
    if (!std::isfinite(sp[(size_t)i])) all_reachable = false;
  if (all_reachable) {
    StatReport r1 = pair_stats(n1, PairSamplePlan::all_pairs());
    StatReport r2 = pair_stats(n2, PairSamplePlan::all_pairs());
    CHECK(r1.mean_excess == doctest::Approx(r2.mean_excess).epsilon(1e-9));
    CHECK(r1.mean_ratio == doctest::Approx(r2.mean_ratio).epsilon(1e-9));
  }
}

TEST_CASE("assignment: matches brute force on small random matrices") {
  Rng rng(31415);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng.below(5));  // 2..6
    std::vector<std::vector<double>> cost((size_t)n, std::vector<double>((size_t)n));
    for (auto& row : cost)
      for (double& c : row) c = rng.uniform();
    double got = assignment_cost(cost);
    double want = oracle::assignment_bruteforce(cost);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("assignment: knowns and guards") {
  CHECK(assignment_cost({{5.0}}) == doctest::Approx(5.0));
  // Diagonal is optimal here.
  CHECK(assignment_cost({{1.0, 10.0}, {10.0, 1.0}}) == doctest::Approx(2.0));
  // Anti-diagonal is optimal here.
  CHECK(assignment_cost({{10.0, 1.0}, {1.0, 10.0}}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(assignment_cost({}), SizeMismatch);
  CHECK_THROWS_AS(assignment_cost({{1.0, 2.0}}), SizeMismatch);
}

TEST_CASE("equidistribution cost: identity coupling and forced couplings") {
  std::vector<Point> pts = {{0.4, 0.7}, {1.9, 0.2}, {1.1, 1.5}};
  for (double L : {0.5, 1.0, 10.0})
    CHECK(equidist_cost_between(pts, pts, L) == doctest::Approx(0.0));

  // Single-point sets: the coupling is forced.
  CHECK(equidist_cost_between({{0, 0}}, {{3, 0}}, 3.0) == doctest::Approx(1.0));
  CHECK(equidist_cost_between({{0, 0}}, {{3, 0}}, 6.0) == doctest::Approx(0.5));
  CHECK(equidist_cost_between({{0, 0}}, {{9, 0}}, 2.0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(equidist_cost_between({}, {}, 1.0), SizeMismatch);
  CHECK_THROWS_AS(equidist_cost_between({{0, 0}}, {{1, 1}, {2, 2}}, 1.0), SizeMismatch);
  CHECK_THROWS_AS(equidist_cost_between({{0, 0}}, {{1, 1}}, 0.0), InvalidArgument);
}

TEST_CASE("equidistribution cost: assignment equals 720-permutation brute force") {
  Rng rng(515);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> pts, ref;
    for (int i = 0; i < 6; ++i) {
      pts.push_back({4.0 * rng.uniform(), 4.0 * rng.uniform()});
      ref.push_back({4.0 * rng.uniform(), 4.0 * rng.uniform()});
    }
    double L = 0.5 + 3.0 * rng.uniform();
    std::vector<std::vector<double>> cost(6, std::vector<double>(6));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        cost[(size_t)i][(size_t)j] = std::min(1.0, dist(pts[(size_t)i], ref[(size_t)j]) / L);
    double want = oracle::assignment_bruteforce(cost) / 6.0;
    CHECK(equidist_cost_between(pts, ref, L) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("equidistribution cost is nonincreasing in L") {
  Configuration config = uniform_configuration(40, 3);
  double prev = 2.0;
  for (double L : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    EquidistReport rep = equidist_cost(config, L, ReferenceLaw::UniformSquare,
                                       config.n(), 77);
    CHECK(rep.cost <= prev + 1e-12);
    CHECK(rep.cost >= 0.0);
    CHECK(rep.cost <= 1.0);
    prev = rep.cost;
  }
}

TEST_CASE("equidistribution cost: uniform low, clustered high") {
  int n = 120;
  Configuration uniform = uniform_configuration(n, 5);
  double side = uniform.side;
  double L = side / 3.0;
  EquidistReport rep_uniform =
      equidist_cost(uniform, L, ReferenceLaw::UniformSquare, n, 99);

  Configuration clustered;
  clustered.side = side;
  Rng rng(6);
  for (int i = 0; i < n; ++i)
    clustered.points.push_back({0.05 * side * rng.uniform(), 0.05 * side * rng.uniform()});
  EquidistReport rep_clustered =
      equidist_cost(clustered, L, ReferenceLaw::UniformSquare, n, 99);

  CHECK(rep_uniform.cost >= 0.0);
  CHECK(rep_uniform.cost <= 1.0);
  CHECK(rep_clustered.cost <= 1.0);
  CHECK(rep_clustered.cost > 3.0 * rep_uniform.cost);
  CHECK(rep_clustered.cost > 0.5);  // most mass must travel beyond L
  CHECK(rep_uniform.cost < 0.35);   // two uniform samples are cheap to match

  // Determinism and record fields.
  EquidistReport again = equidist_cost(uniform, L, ReferenceLaw::UniformSquare, n, 99);
  CHECK(again.cost == rep_uniform.cost);
  CHECK(again.L == L);
  CHECK(again.reference_sample_size == n);
  CHECK(again.seed == 99);

  // Disk reference also works and differs from the square reference.
  EquidistReport disk = equidist_cost(uniform, L, ReferenceLaw::UniformDisk, n, 99);
  CHECK(disk.cost >= 0.0);
  CHECK(disk.cost <= 1.0);
  CHECK(disk.cost != rep_uniform.cost);

  CHECK_THROWS_AS(equidist_cost(uniform, L, ReferenceLaw::UniformSquare, n + 1, 99),
                  SizeMismatch);
}

TEST_CASE("box-count statistic: closed forms") {
  // 16 points on a perfect 4x4 lattice of a side-4 window, lambda = 2: every
  // box holds exactly lambda^2 = 4, so the statistic vanishes.
  Configuration lattice;
  lattice.side = 4.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      lattice.points.push_back({0.5 + i, 0.5 + j});
  CHECK(box_count_equidist(lattice, 2.0) == doctest::Approx(0.0));

  // All n points in one box of k boxes total: sum |N - n/k| over boxes =
  // (n - n/k) + (k - 1) n/k = 2 n (1 - 1/k); normalized: 2 (1 - 1/k).
  Configuration heap;
  heap.side = 4.0;
  heap.points.assign(16, Point{0.1, 0.1});
  int k_boxes = 4;
  CHECK(box_count_equidist(heap, 2.0) ==
        doctest::Approx(2.0 * (1.0 - 1.0 / k_boxes)));

  CHECK_THROWS_AS(box_count_equidist(lattice, 3.0), NonIntegralRatio);
  CHECK_THROWS_AS(box_count_equidist(lattice, -1.0), InvalidArgument);
}

TEST_CASE("box-count statistic: uniform samples have small discrepancy") {
  // lambda = n^{1/4} on the canonical window: binomial concentration keeps
  // the normalized discrepancy well below 0.2.
  for (uint64_t seed : {11ull, 22ull, 33ull}) {
    Configuration config = uniform_configuration(2500, seed);
    double lambda = config.side / 10;  // 10x10 boxes, expected 25 per box
    double v = box_count_equidist(config, lambda);
    CHECK(v < 0.2);
    CHECK(v > 0.0);
  }
}

}  // TEST_SUITE
