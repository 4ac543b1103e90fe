#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "netgeo/errors.hpp"
#include "netgeo/netbuild.hpp"
#include "netgeo/stats.hpp"

namespace netgeo {

// Markov-style acceptance thresholds for the rejection search:
//   length_threshold bounds the augmentation cost total - baseline tree,
//   excess_threshold bounds the mean route excess over the fixed pair plan.
struct SearchThresholds {
  double length_threshold = 0.0;
  double excess_threshold = 0.0;
};

// Rejection-search specification. The configuration stays fixed; only the
// line layer is redrawn, attempt k using seed base_seed + k (k = 1-based).
// pair_count = 0 means min(2000, all pairs); the pair plan (count and
// pair_seed) is shared by every attempt so they are compared on the same
// pair set.
struct SearchSpec {
  Configuration config;
  BuildParams params;  // params.seed is ignored; attempts derive their own
  double length_threshold = 0.0;
  double excess_threshold = 0.0;
  int max_attempts = 10;
  uint64_t base_seed = 0;
  int pair_count = 0;
  uint64_t pair_seed = 0;
};

struct AttemptRecord {
  int attempt = 0;  // 1-based
  uint64_t seed = 0;
  double length_excess = 0.0;
  double route_excess = 0.0;
  bool accepted = false;
};

struct SearchResult {
  bool accepted = false;
  int attempts_used = 0;
  // Attempt minimizing max(length_excess/length_threshold,
  // route_excess/excess_threshold); 1-based, 0 if no attempts ran.
  int best_attempt = 0;
  std::vector<AttemptRecord> log;
  std::optional<BuildResult> build;  // present iff accepted
};

// Raised when every attempt failed; carries the full result (log and best
// attempt) for diagnostics.
struct SearchExhausted : ExhaustedAttempts {
  SearchResult result;
  explicit SearchExhausted(SearchResult r)
      : ExhaustedAttempts("rejection_search: no attempt met both thresholds"),
        result(std::move(r)) {}
};

// Runs pilot builds with seeds seed+1 .. seed+pilot_attempts and returns 3x
// the pilot means of (total - baseline tree) and mean route excess, so that
// under the pilot estimate each Markov failure probability is at most 1/3.
SearchThresholds calibrate_thresholds(const Configuration& config,
                                      const BuildParams& params,
                                      int pilot_attempts, uint64_t seed,
                                      int pair_count = 0, uint64_t pair_seed = 0);

// Accepts the first attempt whose measured excesses meet both thresholds;
// deterministic given the spec. Throws SearchExhausted after max_attempts
// misses.
SearchResult rejection_search(const SearchSpec& spec);

}  // namespace netgeo
