#include "netgeo/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netgeo {

namespace {

struct Measured {
  BuildResult build;
  double length_excess;
  double route_excess;
};

int effective_pair_count(int requested, int n_points) {
  long max_pairs = static_cast<long>(n_points) * (n_points - 1) / 2;
  if (requested > 0) return static_cast<int>(std::min<long>(requested, max_pairs));
  return static_cast<int>(std::min<long>(2000, max_pairs));
}

Measured measure_attempt(const Configuration& config, BuildParams params,
                         uint64_t seed, int pair_count, uint64_t pair_seed) {
  params.seed = seed;
  Measured m{build_network(config, params), 0.0, 0.0};
  m.length_excess = m.build.accounting.total - m.build.accounting.baseline_tree_length;
  int n = static_cast<int>(m.build.network.point_nodes.size());
  StatReport rep = pair_stats(
      m.build.network,
      PairSamplePlan::random_pairs(effective_pair_count(pair_count, n), pair_seed));
  m.route_excess = rep.mean_excess;
  return m;
}

}  // namespace

SearchThresholds calibrate_thresholds(const Configuration& config,
                                      const BuildParams& params,
                                      int pilot_attempts, uint64_t seed,
                                      int pair_count, uint64_t pair_seed) {
  if (pilot_attempts < 2)
    throw InvalidArgument("calibrate_thresholds: need at least two pilot attempts");
  double sum_len = 0.0, sum_route = 0.0;
  for (int k = 1; k <= pilot_attempts; ++k) {
    Measured m = measure_attempt(config, params, seed + static_cast<uint64_t>(k),
                                 pair_count, pair_seed);
    sum_len += m.length_excess;
    sum_route += m.route_excess;
  }
  SearchThresholds thresholds;
  thresholds.length_threshold = 3.0 * sum_len / pilot_attempts;
  thresholds.excess_threshold = 3.0 * sum_route / pilot_attempts;
  return thresholds;
}

SearchResult rejection_search(const SearchSpec& spec) {
  if (!(spec.length_threshold > 0.0) || !(spec.excess_threshold > 0.0))
    throw InvalidArgument("rejection_search: thresholds must be positive");
  if (spec.max_attempts < 1)
    throw InvalidArgument("rejection_search: max_attempts must be >= 1");
  spec.config.validate();

  SearchResult result;
  double best_score = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= spec.max_attempts; ++k) {
    uint64_t seed = spec.base_seed + static_cast<uint64_t>(k);
    Measured m = measure_attempt(spec.config, spec.params, seed, spec.pair_count,
                                 spec.pair_seed);
    AttemptRecord rec{k, seed, m.length_excess, m.route_excess, false};
    rec.accepted = m.length_excess <= spec.length_threshold &&
                   m.route_excess <= spec.excess_threshold;
    result.log.push_back(rec);
    result.attempts_used = k;
    double score = std::max(m.length_excess / spec.length_threshold,
                            m.route_excess / spec.excess_threshold);
    if (score < best_score) {
      best_score = score;
      result.best_attempt = k;
    }
    if (rec.accepted) {
      result.accepted = true;
      result.build = std::move(m.build);
      return result;
    }
  }
  throw SearchExhausted(std::move(result));
}

}  // namespace netgeo
