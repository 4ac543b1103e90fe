#include <cmath>
#include <vector>

#include "doctest.h"
#include "netgeo/errors.hpp"
#include "netgeo/search.hpp"

using namespace netgeo;

namespace {

SearchSpec base_spec(int n, uint64_t config_seed) {
  SearchSpec spec;
  spec.config = uniform_configuration(n, config_seed);
  spec.params = default_build_params(n, spec.config.side);
  spec.params.intensity = 0.5;
  spec.pair_count = 200;
  spec.pair_seed = 17;
  return spec;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("calibration: thresholds are exactly three pilot means") {
  Configuration config = uniform_configuration(80, 12);
  BuildParams params = default_build_params(80, config.side);
  params.intensity = 0.8;

  // Recompute the pilot means directly with the documented per-attempt seeds.
  const int pilots = 3;
  const uint64_t seed = 400;
  double sum_len = 0.0, sum_route = 0.0;
  for (int k = 1; k <= pilots; ++k) {
    BuildParams p = params;
    p.seed = seed + static_cast<uint64_t>(k);
    BuildResult res = build_network(config, p);
    sum_len += res.accounting.total - res.accounting.baseline_tree_length;
    StatReport rep = pair_stats(res.network, PairSamplePlan::random_pairs(200, 17));
    sum_route += rep.mean_excess;
  }
  SearchThresholds th = calibrate_thresholds(config, params, pilots, seed, 200, 17);
  CHECK(th.length_threshold == doctest::Approx(3.0 * sum_len / pilots).epsilon(1e-12));
  CHECK(th.excess_threshold == doctest::Approx(3.0 * sum_route / pilots).epsilon(1e-12));
  CHECK_THROWS_AS(calibrate_thresholds(config, params, 1, seed), InvalidArgument);
}

TEST_CASE("calibration: zero intensity pins the length threshold to fixed layers") {
  Configuration config = uniform_configuration(60, 3);
  BuildParams params = default_build_params(60, config.side);
  params.intensity = 0.0;
  BuildResult res = build_network(config, params);
  double fixed_aug = res.accounting.total - res.accounting.baseline_tree_length;
  SearchThresholds th = calibrate_thresholds(config, params, 2, 9, 100, 5);
  // Every pilot attempt builds the same deterministic network.
  CHECK(th.length_threshold == doctest::Approx(3.0 * fixed_aug).epsilon(1e-12));
}

TEST_CASE("calibration pilot means are stable across independent pilots") {
  Configuration config = uniform_configuration(120, 21);
  BuildParams params = default_build_params(120, config.side);
  params.intensity = 0.6;
  SearchThresholds a = calibrate_thresholds(config, params, 8, 1000, 150, 3);
  SearchThresholds b = calibrate_thresholds(config, params, 8, 9000, 150, 3);
  // Same distribution, different seeds: agree within a loose factor.
  CHECK(a.length_threshold / b.length_threshold > 0.5);
  CHECK(a.length_threshold / b.length_threshold < 2.0);
  CHECK(a.excess_threshold / b.excess_threshold > 0.5);
  CHECK(a.excess_threshold / b.excess_threshold < 2.0);
}

TEST_CASE("rejection search: huge thresholds accept the first attempt") {
  SearchSpec spec = base_spec(50, 77);
  spec.length_threshold = 1e18;
  spec.excess_threshold = 1e18;
  spec.base_seed = 500;
  SearchResult res = rejection_search(spec);
  CHECK(res.accepted);
  CHECK(res.attempts_used == 1);
  CHECK(res.best_attempt == 1);
  REQUIRE(res.log.size() == 1);
  CHECK(res.log[0].seed == 501);
  CHECK(res.log[0].accepted);
  REQUIRE(res.build.has_value());
  CHECK(res.build->network.point_nodes.size() == 50);
}

TEST_CASE("rejection search: unreachable thresholds exhaust with full log") {
  SearchSpec spec = base_spec(50, 77);
  spec.length_threshold = 1e-12;  // grid length alone exceeds this
  spec.excess_threshold = 1e-12;
  spec.max_attempts = 4;
  spec.base_seed = 900;
  try {
    rejection_search(spec);
    FAIL("expected SearchExhausted");
  } catch (const SearchExhausted& e) {
    CHECK(e.result.accepted == false);
    CHECK(e.result.attempts_used == 4);
    REQUIRE(e.result.log.size() == 4);
    for (int k = 0; k < 4; ++k) {
      CHECK(e.result.log[(size_t)k].attempt == k + 1);
      CHECK(e.result.log[(size_t)k].seed == 900 + (uint64_t)k + 1);
      CHECK_FALSE(e.result.log[(size_t)k].accepted);
      CHECK(e.result.log[(size_t)k].length_excess > 0.0);
    }
    CHECK(e.result.best_attempt >= 1);
    CHECK(e.result.best_attempt <= 4);
    CHECK_FALSE(e.result.build.has_value());
  }
  // The same failure is also catchable as the generic error class.
  CHECK_THROWS_AS(rejection_search(spec), ExhaustedAttempts);
}

TEST_CASE("rejection search: spec validation") {
  SearchSpec spec = base_spec(30, 5);
  spec.length_threshold = 0.0;
  spec.excess_threshold = 1.0;
  CHECK_THROWS_AS(rejection_search(spec), InvalidArgument);
  spec.length_threshold = 1.0;
  spec.max_attempts = 0;
  CHECK_THROWS_AS(rejection_search(spec), InvalidArgument);
}

TEST_CASE("rejection search is deterministic and re-measurable") {
  SearchSpec spec = base_spec(60, 13);
  SearchThresholds th =
      calibrate_thresholds(spec.config, spec.params, 4, 333, spec.pair_count, spec.pair_seed);
  spec.length_threshold = th.length_threshold;
  spec.excess_threshold = th.excess_threshold;
  spec.base_seed = 2500;

  SearchResult r1 = rejection_search(spec);
  SearchResult r2 = rejection_search(spec);
  CHECK(r1.accepted == r2.accepted);
  CHECK(r1.attempts_used == r2.attempts_used);
  REQUIRE(r1.log.size() == r2.log.size());
  for (size_t i = 0; i < r1.log.size(); ++i) {
    CHECK(r1.log[i].length_excess == r2.log[i].length_excess);
    CHECK(r1.log[i].route_excess == r2.log[i].route_excess);
  }

  // Re-measure the accepted attempt from scratch; it must reproduce the log.
  REQUIRE(r1.accepted);
  const AttemptRecord& last = r1.log.back();
  BuildParams params = spec.params;
  params.seed = last.seed;
  BuildResult rebuilt = build_network(spec.config, params);
  double len_excess = rebuilt.accounting.total - rebuilt.accounting.baseline_tree_length;
  StatReport rep = pair_stats(rebuilt.network,
                              PairSamplePlan::random_pairs(spec.pair_count, spec.pair_seed));
  CHECK(std::abs(len_excess - last.length_excess) < 1e-9);
  CHECK(std::abs(rep.mean_excess - last.route_excess) < 1e-9);
  CHECK(len_excess <= spec.length_threshold);
  CHECK(rep.mean_excess <= spec.excess_threshold);
}

TEST_CASE("rejection search with calibrated thresholds accepts quickly") {
  // Markov two-sided union bound: single-attempt acceptance >= 1/3, so the
  // mean attempt count over independent searches should sit well below 3.
  int total_attempts = 0, accepted = 0;
  const int searches = 30;
  for (int i = 0; i < searches; ++i) {
    SearchSpec spec = base_spec(40, 600 + static_cast<uint64_t>(i));
    SearchThresholds th = calibrate_thresholds(spec.config, spec.params, 3,
                                               7000 + static_cast<uint64_t>(13 * i),
                                               spec.pair_count, spec.pair_seed);
    spec.length_threshold = th.length_threshold;
    spec.excess_threshold = th.excess_threshold;
    spec.base_seed = 100000 + static_cast<uint64_t>(1000 * i);
    try {
      SearchResult res = rejection_search(spec);
      ++accepted;
      total_attempts += res.attempts_used;
    } catch (const SearchExhausted&) {
      total_attempts += 10;
    }
  }
  CHECK(accepted >= searches - 1);
  CHECK(static_cast<double>(total_attempts) / searches < 3.0);
}

}  // TEST_SUITE
