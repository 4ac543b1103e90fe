// netgeo — stochastic-geometry toolkit command line.
//
// Subcommands: jm, cell-svg, build, stats, equidist, search, scaling.
// Every run writes a manifest (even on failure) listing the command, the full
// parameter record, the seeds, the output files, and the wall-clock duration.
// All randomness flows from explicit --seed flags; commands that feed several
// independent consumers from one seed derive per-purpose sub-seeds with a
// fixed splitmix64 mix (documented per flag below), so reruns are always
// byte-identical.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "netgeo/cell.hpp"
#include "netgeo/errors.hpp"
#include "netgeo/io.hpp"
#include "netgeo/lineproc.hpp"
#include "netgeo/netbuild.hpp"
#include "netgeo/search.hpp"
#include "netgeo/stats.hpp"

namespace {

using nlohmann::ordered_json;

// Purpose tags for sub-seed derivation. Distinct purposes give independent
// Philox keys, so e.g. the uniform points and the Poisson lines of one build
// never share a random stream even though both trace back to one --seed.
enum : uint64_t {
  kSeedPoints = 1,
  kSeedLines = 2,
  kSeedPairs = 3,
  kSeedReference = 4,
};

uint64_t mix_seed(uint64_t seed, uint64_t purpose) {
  uint64_t z = seed + purpose * 0x9E3779B97F4A7C15ull;  // splitmix64
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Raised for post-parse argument validation failures (exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string default_manifest_path(const std::string& primary_out) {
  return primary_out + ".manifest.json";
}

// Runs `body`, then writes the manifest whether or not `body` threw.
// Returns the process exit code: 0 on success, 2 on usage errors, 1 otherwise.
int run_with_manifest(const std::string& command, const std::string& manifest_path,
                      const ordered_json& parameters,
                      const std::vector<uint64_t>& seeds,
                      const std::function<void(netgeo::RunManifest&)>& body) {
  netgeo::RunManifest manifest;
  manifest.command = command;
  manifest.parameters = parameters;
  manifest.seeds = seeds;
  int code = 0;
  auto start = std::chrono::steady_clock::now();
  try {
    body(manifest);
  } catch (const UsageError& e) {
    manifest.ok = false;
    manifest.error = e.what();
    code = 2;
  } catch (const std::exception& e) {
    manifest.ok = false;
    manifest.error = e.what();
    code = 1;
  }
  auto stop = std::chrono::steady_clock::now();
  manifest.duration_seconds = std::chrono::duration<double>(stop - start).count();
  manifest.write(manifest_path);
  if (!manifest.ok) std::fprintf(stderr, "netgeo %s: %s\n", command.c_str(), manifest.error.c_str());
  return code;
}

// --- shared option bundles ---------------------------------------------------

// Point configuration source: --uniform n (seeded) or --points file --side L.
struct ConfigSource {
  int uniform_n = 0;
  std::string points_file;
  double side = 0.0;

  void attach(CLI::App* cmd) {
    auto* uni = cmd->add_option("--uniform", uniform_n,
                                "Sample this many points uniformly in [0, sqrt(n)]^2 "
                                "(point sub-seed: splitmix64(seed + 1*golden))");
    auto* pts = cmd->add_option("--points", points_file, "CSV file of configuration points (x,y)");
    auto* side_opt = cmd->add_option("--side", side, "Window side for --points configurations");
    uni->excludes(pts);
    pts->needs(side_opt);
    side_opt->needs(pts);
  }

  netgeo::Configuration load(uint64_t seed) const {
    if (uniform_n > 0 && !points_file.empty())
      throw UsageError("give either --uniform or --points, not both");
    if (uniform_n > 0) return netgeo::uniform_configuration(uniform_n, mix_seed(seed, kSeedPoints));
    if (points_file.empty()) throw UsageError("a configuration is required: --uniform n or --points file");
    netgeo::Configuration config;
    config.points = netgeo::read_points_csv(points_file);
    config.side = side;
    config.validate();
    return config;
  }

  void record(ordered_json& params) const {
    if (uniform_n > 0) {
      params["uniform"] = uniform_n;
    } else {
      params["points"] = points_file;
      params["side"] = side;
    }
  }
};

netgeo::BuildParams make_build_params(const netgeo::Configuration& config, double intensity,
                                      double s, double t, uint64_t seed) {
  netgeo::BuildParams params = netgeo::default_build_params(config.n(), config.side);
  params.intensity = intensity;
  if (s > 0) params.s = s;
  if (t > 0) params.t = t;
  params.seed = mix_seed(seed, kSeedLines);
  return params;
}

netgeo::PairSamplePlan make_pair_plan(int n_points, int pair_count, uint64_t pair_seed) {
  long max_pairs = static_cast<long>(n_points) * (n_points - 1) / 2;
  long want = pair_count > 0 ? std::min<long>(pair_count, max_pairs) : std::min<long>(2000, max_pairs);
  if (want == max_pairs && n_points <= 2000) return netgeo::PairSamplePlan::all_pairs();
  return netgeo::PairSamplePlan::random_pairs(static_cast<int>(want), pair_seed);
}

// --- jm ----------------------------------------------------------------------

struct JmOptions {
  std::vector<double> m_values;
  double intensity = 1.0;
  int64_t replicates = 1000;
  std::string method = "all";
  uint64_t seed = 0;
  bool seed_given = false;
  double quad_tol = 1e-6;
  std::string out;
  std::string manifest;
};

int cmd_jm(const JmOptions& opt) {
  ordered_json params;
  params["m"] = opt.m_values;
  params["intensity"] = opt.intensity;
  params["replicates"] = opt.replicates;
  params["method"] = opt.method;
  if (opt.seed_given) params["seed"] = opt.seed;
  params["quad_tol"] = opt.quad_tol;
  params["out"] = opt.out;

  std::string manifest_path = opt.manifest.empty() ? default_manifest_path(opt.out) : opt.manifest;
  std::vector<uint64_t> seeds;
  if (opt.seed_given) seeds.push_back(opt.seed);

  return run_with_manifest("jm", manifest_path, params, seeds, [&](netgeo::RunManifest& manifest) {
    const bool want_mc = opt.method == "mc" || opt.method == "all";
    const bool want_quad = opt.method == "quad" || opt.method == "all";
    const bool want_asym = opt.method == "asymptotic" || opt.method == "all";
    if (!want_mc && !want_quad && !want_asym)
      throw UsageError("--method must be one of mc, quad, asymptotic, all");
    if (opt.m_values.empty()) throw UsageError("--m needs at least one separation value");
    for (double m : opt.m_values)
      if (!(m > 0)) throw UsageError("--m values must be positive");
    if (want_mc && opt.replicates < 1)
      throw UsageError("--replicates must be >= 1 for the Monte Carlo method");
    if (want_mc && !opt.seed_given)
      throw UsageError("--seed is required for the Monte Carlo method");
    if (want_mc && !(opt.intensity > 0))
      throw UsageError("--intensity must be positive for the Monte Carlo method");
    if ((want_quad || want_asym) && opt.intensity != 1.0)
      throw UsageError("quad and asymptotic evaluate the unit-intensity integral; use --method mc for other intensities");

    std::vector<std::vector<std::string>> rows;
    for (double m : opt.m_values) {
      if (want_mc) {
        netgeo::EstimateReport rep = netgeo::estimate_jm_mc(m, opt.intensity, opt.replicates, opt.seed);
        rows.push_back({netgeo::format_real(m), "mc", netgeo::format_real(rep.value),
                        netgeo::format_real(rep.value / 2.0), netgeo::format_real(*rep.std_error),
                        std::to_string(rep.replicates), std::to_string(rep.seed)});
      }
      if (want_quad) {
        netgeo::EstimateReport rep = netgeo::jm_quadrature(m, opt.quad_tol);
        rows.push_back({netgeo::format_real(m), "quad", netgeo::format_real(rep.value),
                        netgeo::format_real(rep.value / 2.0), netgeo::format_real(*rep.abs_tolerance),
                        "0", ""});
      }
      if (want_asym) {
        double value = netgeo::jm_asymptotic(m);
        rows.push_back({netgeo::format_real(m), "asymptotic", netgeo::format_real(value),
                        netgeo::format_real(value / 2.0), "", "0", ""});
      }
    }
    netgeo::write_csv(opt.out, {"m", "method", "jm", "semi_excess", "uncertainty", "replicates", "seed"},
                      rows);
    manifest.outputs.push_back(opt.out);
  });
}

// --- cell-svg ------------------------------------------------------------------

struct CellSvgOptions {
  double m = 0.0;
  double intensity = 1.0;
  uint64_t seed = 0;
  std::string out;
  std::string manifest;
};

int cmd_cell_svg(const CellSvgOptions& opt) {
  ordered_json params;
  params["m"] = opt.m;
  params["intensity"] = opt.intensity;
  params["seed"] = opt.seed;
  params["out"] = opt.out;
  std::string manifest_path = opt.manifest.empty() ? default_manifest_path(opt.out) : opt.manifest;

  return run_with_manifest("cell-svg", manifest_path, params, {opt.seed},
                           [&](netgeo::RunManifest& manifest) {
    if (!(opt.m > 0)) throw UsageError("--m must be positive");
    if (!(opt.intensity > 0)) throw UsageError("--intensity must be positive");

    const netgeo::Point v1{-opt.m / 2.0, 0.0};
    const netgeo::Point v2{opt.m / 2.0, 0.0};
    double half_width = std::max(10.0 / opt.intensity, 0.01 * opt.m);
    for (int doubling = 0; doubling < 16; ++doubling) {
      netgeo::LineSample sample =
          netgeo::sample_tube_nonseparating(v1, v2, half_width, {opt.intensity, opt.seed});
      netgeo::Rect tube{-opt.m / 2.0 - half_width, -half_width, opt.m / 2.0 + half_width, half_width};
      netgeo::ConvexCell cell = netgeo::two_point_cell(sample.lines, v1, v2, tube);
      if (cell.closed) {
        netgeo::write_text_file(opt.out, netgeo::cell_to_svg(cell, v1, v2));
        manifest.outputs.push_back(opt.out);
        return;
      }
      half_width *= 2.0;
    }
    throw netgeo::NonConvergentWidening("cell did not close within 16 tube doublings");
  });
}

// --- build ---------------------------------------------------------------------

struct BuildOptions {
  ConfigSource source;
  double intensity = 0.0;
  double s = 0.0;
  double t = 0.0;
  uint64_t seed = 0;
  std::string out_json;
  std::string out_svg;
  std::string out_accounting;
  std::string manifest;
};

int cmd_build(const BuildOptions& opt) {
  ordered_json params;
  opt.source.record(params);
  params["intensity"] = opt.intensity;
  if (opt.s > 0) params["s"] = opt.s;
  if (opt.t > 0) params["t"] = opt.t;
  params["seed"] = opt.seed;
  params["out_json"] = opt.out_json;
  if (!opt.out_svg.empty()) params["out_svg"] = opt.out_svg;
  if (!opt.out_accounting.empty()) params["out_accounting"] = opt.out_accounting;
  std::string manifest_path = opt.manifest.empty() ? default_manifest_path(opt.out_json) : opt.manifest;

  return run_with_manifest("build", manifest_path, params, {opt.seed},
                           [&](netgeo::RunManifest& manifest) {
    netgeo::Configuration config = opt.source.load(opt.seed);
    netgeo::BuildParams bp = make_build_params(config, opt.intensity, opt.s, opt.t, opt.seed);
    netgeo::BuildResult result = netgeo::build_network(config, bp);

    ordered_json net_doc = netgeo::network_to_json(result.network, config.side);
    netgeo::write_text_file(opt.out_json, net_doc.dump(2) + "\n");
    manifest.outputs.push_back(opt.out_json);
    if (!opt.out_svg.empty()) {
      netgeo::write_text_file(opt.out_svg, netgeo::network_to_svg(result.network, config.side));
      manifest.outputs.push_back(opt.out_svg);
    }
    if (!opt.out_accounting.empty()) {
      netgeo::write_text_file(opt.out_accounting,
                              netgeo::accounting_to_json(result.accounting).dump(2) + "\n");
      manifest.outputs.push_back(opt.out_accounting);
    }
  });
}

// --- stats -----------------------------------------------------------------------

struct StatsOptions {
  std::string network_file;
  std::string points_file;
  std::string pairs = "all";
  uint64_t pair_seed = 0;
  bool pair_seed_given = false;
  std::string out;
  std::string pairs_csv;
  std::string manifest;
};

int cmd_stats(const StatsOptions& opt) {
  ordered_json params;
  params["network"] = opt.network_file;
  if (!opt.points_file.empty()) params["points"] = opt.points_file;
  params["pairs"] = opt.pairs;
  if (opt.pair_seed_given) params["pair_seed"] = opt.pair_seed;
  params["out"] = opt.out;
  if (!opt.pairs_csv.empty()) params["pairs_csv"] = opt.pairs_csv;
  std::string manifest_path = opt.manifest.empty() ? default_manifest_path(opt.out) : opt.manifest;
  std::vector<uint64_t> seeds;
  if (opt.pair_seed_given) seeds.push_back(opt.pair_seed);

  return run_with_manifest("stats", manifest_path, params, seeds,
                           [&](netgeo::RunManifest& manifest) {
    netgeo::PlanarNetwork net =
        netgeo::network_from_json(ordered_json::parse(netgeo::read_text_file(opt.network_file)));

    if (!opt.points_file.empty()) {
      // Cross-check: every supplied point must be a network node; pair indices
      // then refer to rows of the points file.
      std::vector<netgeo::Point> pts = netgeo::read_points_csv(opt.points_file);
      std::vector<int> nodes;
      nodes.reserve(pts.size());
      for (const netgeo::Point& p : pts) nodes.push_back(net.find_node(p));
      net.point_nodes = std::move(nodes);
    }
    const int np = static_cast<int>(net.point_nodes.size());

    netgeo::PairSamplePlan plan;
    if (opt.pairs == "all") {
      plan = netgeo::PairSamplePlan::all_pairs();
    } else {
      int count = 0;
      try {
        size_t used = 0;
        count = std::stoi(opt.pairs, &used);
        if (used != opt.pairs.size()) throw std::invalid_argument(opt.pairs);
      } catch (const std::exception&) {
        throw UsageError("--pairs must be 'all' or a positive pair count");
      }
      if (count < 1) throw UsageError("--pairs count must be >= 1");
      if (!opt.pair_seed_given) throw UsageError("--pair-seed is required with a sampled pair plan");
      plan = netgeo::PairSamplePlan::random_pairs(count, opt.pair_seed);
    }

    netgeo::StatReport report = netgeo::pair_stats(net, plan);
    netgeo::write_text_file(opt.out, netgeo::stat_report_to_json(report).dump(2) + "\n");
    manifest.outputs.push_back(opt.out);

    if (!opt.pairs_csv.empty()) {
      std::vector<std::pair<int, int>> pairs = netgeo::plan_pairs(plan, np);
      std::vector<std::vector<std::string>> rows;
      rows.reserve(pairs.size());
      size_t a = 0;
      while (a < pairs.size()) {  // one Dijkstra per distinct source
        size_t b = a;
        while (b < pairs.size() && pairs[b].first == pairs[a].first) ++b;
        int src_node = net.point_nodes[static_cast<size_t>(pairs[a].first)];
        std::vector<double> sp = netgeo::shortest_paths_from(net, src_node);
        netgeo::Point ps = net.nodes[static_cast<size_t>(src_node)];
        for (size_t k = a; k < b; ++k) {
          int dst_node = net.point_nodes[static_cast<size_t>(pairs[k].second)];
          netgeo::Point pd = net.nodes[static_cast<size_t>(dst_node)];
          double euclid = netgeo::dist(ps, pd);
          double route = sp[static_cast<size_t>(dst_node)];
          std::string excess = euclid < 1e-9 ? "" : netgeo::format_real(std::max(0.0, route - euclid));
          std::string ratio = euclid < 1e-9 ? "" : netgeo::format_real(std::max(0.0, route / euclid - 1.0));
          rows.push_back({std::to_string(pairs[k].first), std::to_string(pairs[k].second),
                          netgeo::format_real(euclid), netgeo::format_real(route), excess, ratio});
        }
        a = b;
      }
      netgeo::write_csv(opt.pairs_csv, {"i", "j", "euclid", "route", "excess", "ratio"}, rows);
      manifest.outputs.push_back(opt.pairs_csv);
    }
  });
}

// --- equidist ---------------------------------------------------------------------

struct EquidistOptions {
  ConfigSource source;
  double L = 0.0;
  std::string reference = "square";
  uint64_t seed = 0;
  double box_lambda = 0.0;
  std::string out;
  std::string manifest;
};

int cmd_equidist(const EquidistOptions& opt) {
  ordered_json params;
  opt.source.record(params);
  params["L"] = opt.L;
  params["reference"] = opt.reference;
  params["seed"] = opt.seed;
  if (opt.box_lambda > 0) params["box_lambda"] = opt.box_lambda;
  params["out"] = opt.out;
  std::string manifest_path = opt.manifest.empty() ? default_manifest_path(opt.out) : opt.manifest;

  return run_with_manifest("equidist", manifest_path, params, {opt.seed},
                           [&](netgeo::RunManifest& manifest) {
    if (!(opt.L > 0)) throw UsageError("--L must be positive");
    netgeo::ReferenceLaw law;
    if (opt.reference == "square") law = netgeo::ReferenceLaw::UniformSquare;
    else if (opt.reference == "disk") law = netgeo::ReferenceLaw::UniformDisk;
    else throw UsageError("--reference must be square or disk");

    netgeo::Configuration config = opt.source.load(opt.seed);
    netgeo::EquidistReport report =
        netgeo::equidist_cost(config, opt.L, law, config.n(), mix_seed(opt.seed, kSeedReference));
    ordered_json doc = netgeo::equidist_report_to_json(report);
    if (opt.box_lambda > 0)
      doc["box_count"] = netgeo::box_count_equidist(config, opt.box_lambda);
    netgeo::write_text_file(opt.out, doc.dump(2) + "\n");
    manifest.outputs.push_back(opt.out);
  });
}

// --- search -----------------------------------------------------------------------

struct SearchOptions {
  ConfigSource source;
  double intensity = 0.0;
  double s = 0.0;
  double t = 0.0;
  uint64_t seed = 0;
  double length_threshold = 0.0;
  double excess_threshold = 0.0;
  int pilot = 3;
  uint64_t pilot_seed = 0;
  bool pilot_seed_given = false;
  int max_attempts = 10;
  uint64_t base_seed = 0;
  int pair_count = 0;
  uint64_t pair_seed = 0;
  bool pair_seed_given = false;
  std::string out;
  std::string out_network;
  std::string out_svg;
  std::string manifest;
};

int cmd_search(const SearchOptions& opt) {
  ordered_json params;
  opt.source.record(params);
  params["intensity"] = opt.intensity;
  if (opt.s > 0) params["s"] = opt.s;
  if (opt.t > 0) params["t"] = opt.t;
  params["seed"] = opt.seed;
  if (opt.length_threshold > 0) params["length_threshold"] = opt.length_threshold;
  if (opt.excess_threshold > 0) params["excess_threshold"] = opt.excess_threshold;
  params["pilot"] = opt.pilot;
  if (opt.pilot_seed_given) params["pilot_seed"] = opt.pilot_seed;
  params["max_attempts"] = opt.max_attempts;
  params["base_seed"] = opt.base_seed;
  params["pair_count"] = opt.pair_count;
  if (opt.pair_seed_given) params["pair_seed"] = opt.pair_seed;
  params["out"] = opt.out;
  if (!opt.out_network.empty()) params["out_network"] = opt.out_network;
  if (!opt.out_svg.empty()) params["out_svg"] = opt.out_svg;
  std::string manifest_path = opt.manifest.empty() ? default_manifest_path(opt.out) : opt.manifest;

  std::vector<uint64_t> seeds{opt.seed, opt.base_seed};
  if (opt.pilot_seed_given) seeds.push_back(opt.pilot_seed);
  if (opt.pair_seed_given) seeds.push_back(opt.pair_seed);

  return run_with_manifest("search", manifest_path, params, seeds,
                           [&](netgeo::RunManifest& manifest) {
    const bool explicit_thresholds = opt.length_threshold > 0 || opt.excess_threshold > 0;
    if (explicit_thresholds && !(opt.length_threshold > 0 && opt.excess_threshold > 0))
      throw UsageError("give both --length-threshold and --excess-threshold or neither");
    if (!explicit_thresholds && !opt.pilot_seed_given)
      throw UsageError("--pilot-seed is required when thresholds are calibrated from pilots");
    if (!opt.pair_seed_given) throw UsageError("--pair-seed is required");

    netgeo::Configuration config = opt.source.load(opt.seed);
    netgeo::BuildParams bp = make_build_params(config, opt.intensity, opt.s, opt.t, opt.seed);

    netgeo::SearchThresholds thresholds{opt.length_threshold, opt.excess_threshold};
    if (!explicit_thresholds)
      thresholds = netgeo::calibrate_thresholds(config, bp, opt.pilot, opt.pilot_seed,
                                                opt.pair_count, opt.pair_seed);

    netgeo::SearchSpec spec;
    spec.config = config;
    spec.params = bp;
    spec.length_threshold = thresholds.length_threshold;
    spec.excess_threshold = thresholds.excess_threshold;
    spec.max_attempts = opt.max_attempts;
    spec.base_seed = opt.base_seed;
    spec.pair_count = opt.pair_count;
    spec.pair_seed = opt.pair_seed;

    auto write_outcome = [&](const netgeo::SearchResult& result) {
      ordered_json doc;
      doc["length_threshold"] = thresholds.length_threshold;
      doc["excess_threshold"] = thresholds.excess_threshold;
      doc["result"] = netgeo::search_result_to_json(result);
      netgeo::write_text_file(opt.out, doc.dump(2) + "\n");
      manifest.outputs.push_back(opt.out);
      if (result.build.has_value()) {
        if (!opt.out_network.empty()) {
          ordered_json net_doc = netgeo::network_to_json(result.build->network, config.side);
          netgeo::write_text_file(opt.out_network, net_doc.dump(2) + "\n");
          manifest.outputs.push_back(opt.out_network);
        }
        if (!opt.out_svg.empty()) {
          netgeo::write_text_file(opt.out_svg,
                                  netgeo::network_to_svg(result.build->network, config.side));
          manifest.outputs.push_back(opt.out_svg);
        }
      }
    };

    try {
      netgeo::SearchResult result = netgeo::rejection_search(spec);
      write_outcome(result);
    } catch (const netgeo::SearchExhausted& e) {
      write_outcome(e.result);  // keep the log; the run still fails
      throw;
    }
  });
}

// --- scaling ----------------------------------------------------------------------

struct ScalingOptions {
  std::vector<int> n_values;
  double intensity = 0.0;
  int seeds = 5;
  uint64_t seed = 0;
  int pair_count = 0;
  std::string out;
  std::string manifest;
};

int cmd_scaling(const ScalingOptions& opt) {
  ordered_json params;
  params["n"] = opt.n_values;
  params["intensity"] = opt.intensity;
  params["seeds"] = opt.seeds;
  params["seed"] = opt.seed;
  params["pair_count"] = opt.pair_count;
  params["out"] = opt.out;
  std::string manifest_path = opt.manifest.empty() ? default_manifest_path(opt.out) : opt.manifest;

  return run_with_manifest("scaling", manifest_path, params, {opt.seed},
                           [&](netgeo::RunManifest& manifest) {
    if (opt.n_values.empty()) throw UsageError("--n needs at least one configuration size");
    for (int n : opt.n_values)
      if (n < 2) throw UsageError("--n values must be >= 2");
    if (opt.seeds < 1) throw UsageError("--seeds must be >= 1");

    std::vector<std::vector<std::string>> rows;
    for (int n : opt.n_values) {
      for (int i = 1; i <= opt.seeds; ++i) {
        // Row (n, seed_i) reproduces exactly as `build --uniform n --seed seed_i`.
        uint64_t run_seed = opt.seed + static_cast<uint64_t>(i);
        netgeo::Configuration config = netgeo::uniform_configuration(n, mix_seed(run_seed, kSeedPoints));
        netgeo::BuildParams bp = netgeo::default_build_params(n, config.side);
        bp.intensity = opt.intensity;
        bp.seed = mix_seed(run_seed, kSeedLines);
        netgeo::BuildResult result = netgeo::build_network(config, bp);

        netgeo::PairSamplePlan plan =
            make_pair_plan(config.n(), opt.pair_count, mix_seed(run_seed, kSeedPairs));
        netgeo::StatReport report = netgeo::pair_stats(result.network, plan);

        rows.push_back({std::to_string(n), std::to_string(run_seed),
                        netgeo::format_real(report.mean_excess),
                        netgeo::format_real(report.mean_ratio),
                        netgeo::format_real(result.accounting.total),
                        netgeo::format_real(result.accounting.baseline_tree_length)});
      }
    }
    netgeo::write_csv(opt.out, {"n", "seed", "excess", "ratio", "total_length", "tree_length"},
                      rows);
    manifest.outputs.push_back(opt.out);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netgeo: Poisson-line-process cell analysis and low-cost short-route networks"};
  app.require_subcommand(1);
  app.footer("Thread count override: set NETGEO_THREADS. All artifacts are byte-reproducible\n"
             "functions of (args, seeds); timestamps appear only in run manifests.");

  JmOptions jm;
  CLI::App* jm_cmd = app.add_subcommand(
      "jm", "Mean perimeter excess J_m of the two-point cell: Monte Carlo, quadrature, asymptotic");
  jm_cmd->add_option("--m", jm.m_values, "Separation value(s)")->required()->delimiter(',');
  jm_cmd->add_option("--intensity", jm.intensity, "Line process intensity (mc only; quad/asymptotic need 1)")
      ->capture_default_str();
  jm_cmd->add_option("--replicates", jm.replicates, "Monte Carlo replicates")->capture_default_str();
  jm_cmd->add_option("--method", jm.method, "mc | quad | asymptotic | all")->capture_default_str();
  jm_cmd->add_option("--seed", jm.seed, "Monte Carlo seed (required for mc)")
      ->trigger_on_parse()
      ->each([&jm](const std::string&) { jm.seed_given = true; });
  jm_cmd->add_option("--quad-tol", jm.quad_tol, "Quadrature relative tolerance")->capture_default_str();
  jm_cmd->add_option("--out", jm.out, "Output CSV")->required();
  jm_cmd->add_option("--manifest", jm.manifest, "Manifest path (default: <out>.manifest.json)");

  CellSvgOptions cell;
  CLI::App* cell_cmd = app.add_subcommand("cell-svg", "Draw one sampled two-point cell as SVG");
  cell_cmd->add_option("--m", cell.m, "Separation of the two points")->required();
  cell_cmd->add_option("--intensity", cell.intensity, "Line process intensity")->capture_default_str();
  cell_cmd->add_option("--seed", cell.seed, "Sample seed")->required();
  cell_cmd->add_option("--out", cell.out, "Output SVG")->required();
  cell_cmd->add_option("--manifest", cell.manifest, "Manifest path (default: <out>.manifest.json)");

  BuildOptions build;
  CLI::App* build_cmd = app.add_subcommand(
      "build", "Build the hierarchical network (tree + grid + hot-spot cells + Poisson lines)");
  build.source.attach(build_cmd);
  build_cmd->add_option("--intensity", build.intensity, "Poisson line intensity (line sub-seed: splitmix64(seed + 2*golden))")
      ->capture_default_str();
  build_cmd->add_option("--s", build.s, "Medium grid pitch (default: side/round(side/ln(n)^{1/3}))");
  build_cmd->add_option("--t", build.t, "Hot-spot grid pitch (default: s/round(s*ln(n)^{1/6}))");
  build_cmd->add_option("--seed", build.seed, "Run seed")->required();
  build_cmd->add_option("--out-json", build.out_json, "Network JSON output")->required();
  build_cmd->add_option("--out-svg", build.out_svg, "Layered SVG output");
  build_cmd->add_option("--out-accounting", build.out_accounting, "Per-layer length accounting JSON");
  build_cmd->add_option("--manifest", build.manifest, "Manifest path (default: <out-json>.manifest.json)");

  StatsOptions stats;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Excess and ratio route statistics over point pairs");
  stats_cmd->add_option("--network", stats.network_file, "Network JSON (from build/search)")->required();
  stats_cmd->add_option("--points", stats.points_file,
                        "Optional points CSV; every point must be a network node");
  stats_cmd->add_option("--pairs", stats.pairs, "'all' or a sampled pair count")->capture_default_str();
  stats_cmd->add_option("--pair-seed", stats.pair_seed, "Pair sampling seed (required when sampling)")
      ->trigger_on_parse()
      ->each([&stats](const std::string&) { stats.pair_seed_given = true; });
  stats_cmd->add_option("--out", stats.out, "StatReport JSON output")->required();
  stats_cmd->add_option("--pairs-csv", stats.pairs_csv, "Optional per-pair CSV (i,j,euclid,route,excess,ratio)");
  stats_cmd->add_option("--manifest", stats.manifest, "Manifest path (default: <out>.manifest.json)");

  EquidistOptions equidist;
  CLI::App* equidist_cmd = app.add_subcommand(
      "equidist", "Truncated-transport equidistribution cost against a reference sample");
  equidist.source.attach(equidist_cmd);
  equidist_cmd->add_option("--L", equidist.L, "Coupling distance scale")->required();
  equidist_cmd->add_option("--reference", equidist.reference, "square | disk")->capture_default_str();
  equidist_cmd->add_option("--seed", equidist.seed,
                           "Run seed (reference sub-seed: splitmix64(seed + 4*golden))")
      ->required();
  equidist_cmd->add_option("--box-lambda", equidist.box_lambda,
                           "Also report the box-count discrepancy at this box side");
  equidist_cmd->add_option("--out", equidist.out, "EquidistReport JSON output")->required();
  equidist_cmd->add_option("--manifest", equidist.manifest, "Manifest path (default: <out>.manifest.json)");

  SearchOptions search;
  CLI::App* search_cmd = app.add_subcommand(
      "search", "Rejection-sample line layers until length and route thresholds are met");
  search.source.attach(search_cmd);
  search_cmd->add_option("--intensity", search.intensity, "Poisson line intensity")->capture_default_str();
  search_cmd->add_option("--s", search.s, "Medium grid pitch override");
  search_cmd->add_option("--t", search.t, "Hot-spot grid pitch override");
  search_cmd->add_option("--seed", search.seed, "Run seed (points sub-seed as in build)")->required();
  search_cmd->add_option("--length-threshold", search.length_threshold,
                         "Accept if total - baseline tree <= this (with --excess-threshold)");
  search_cmd->add_option("--excess-threshold", search.excess_threshold,
                         "Accept if mean route excess <= this (with --length-threshold)");
  search_cmd->add_option("--pilot", search.pilot, "Pilot builds for threshold calibration")
      ->capture_default_str();
  search_cmd->add_option("--pilot-seed", search.pilot_seed, "Calibration seed (pilots use seed+1..seed+pilot)")
      ->trigger_on_parse()
      ->each([&search](const std::string&) { search.pilot_seed_given = true; });
  search_cmd->add_option("--max-attempts", search.max_attempts, "Attempt budget")->capture_default_str();
  search_cmd->add_option("--base-seed", search.base_seed, "Attempt k uses line seed base+k")->required();
  search_cmd->add_option("--pair-count", search.pair_count,
                         "Route pairs per attempt (0 = min(2000, all pairs))")
      ->capture_default_str();
  search_cmd->add_option("--pair-seed", search.pair_seed, "Pair plan seed (shared across attempts)")
      ->trigger_on_parse()
      ->each([&search](const std::string&) { search.pair_seed_given = true; });
  search_cmd->add_option("--out", search.out, "Search log JSON output")->required();
  search_cmd->add_option("--out-network", search.out_network, "Accepted network JSON");
  search_cmd->add_option("--out-svg", search.out_svg, "Accepted network SVG");
  search_cmd->add_option("--manifest", search.manifest, "Manifest path (default: <out>.manifest.json)");

  ScalingOptions scaling;
  CLI::App* scaling_cmd = app.add_subcommand(
      "scaling", "Sweep n: per-seed excess, ratio, and length accounting CSV");
  scaling_cmd->add_option("--n", scaling.n_values, "Configuration sizes")->required()->delimiter(',');
  scaling_cmd->add_option("--intensity", scaling.intensity, "Poisson line intensity")->capture_default_str();
  scaling_cmd->add_option("--seeds", scaling.seeds, "Seeds per n (runs use seed+1..seed+count)")
      ->capture_default_str();
  scaling_cmd->add_option("--seed", scaling.seed, "Base seed")->required();
  scaling_cmd->add_option("--pair-count", scaling.pair_count,
                          "Route pairs per run (0 = min(2000, all pairs))")
      ->capture_default_str();
  scaling_cmd->add_option("--out", scaling.out, "Output CSV")->required();
  scaling_cmd->add_option("--manifest", scaling.manifest, "Manifest path (default: <out>.manifest.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    if (code != 0) {
      // Usage failure: still leave a manifest behind so no run goes unrecorded.
      netgeo::RunManifest manifest;
      manifest.command = argc > 1 ? argv[1] : "(none)";
      manifest.ok = false;
      manifest.error = std::string("argument error: ") + e.what();
      manifest.write("netgeo.manifest.json");
    }
    return code;
  }

  if (jm_cmd->parsed()) return cmd_jm(jm);
  if (cell_cmd->parsed()) return cmd_cell_svg(cell);
  if (build_cmd->parsed()) return cmd_build(build);
  if (stats_cmd->parsed()) return cmd_stats(stats);
  if (equidist_cmd->parsed()) return cmd_equidist(equidist);
  if (search_cmd->parsed()) return cmd_search(search);
  if (scaling_cmd->parsed()) return cmd_scaling(scaling);
  return 0;
}
