#include "netgeo/netbuild.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "netgeo/errors.hpp"
#include "netgeo/lineproc.hpp"
#include "netgeo/rng.hpp"

namespace netgeo {

void Configuration::validate() const {
  if (!(side > 0.0) || !std::isfinite(side))
    throw InvalidArgument("configuration side must be positive and finite");
  if (n() < 2) throw InvalidArgument("configuration needs at least two points");
  for (const Point& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || p.x < 0.0 || p.x > side ||
        p.y < 0.0 || p.y > side)
      throw PointsOutsideWindow("configuration point outside [0, side]^2");
  }
}

Configuration uniform_configuration(int n, uint64_t seed) {
  if (n < 2) throw InvalidArgument("uniform_configuration needs n >= 2");
  Configuration config;
  config.side = std::sqrt(static_cast<double>(n));
  config.points.reserve(n);
  Rng rng(seed);
  for (int i = 0; i < n; ++i)
    config.points.push_back({config.side * rng.uniform(), config.side * rng.uniform()});
  return config;
}

const char* layer_name(Layer layer) {
  switch (layer) {
    case Layer::Tree: return "Tree";
    case Layer::MediumGrid: return "MediumGrid";
    case Layer::HotspotCell: return "HotspotCell";
    case Layer::HotspotConnector: return "HotspotConnector";
    case Layer::PoissonLine: return "PoissonLine";
  }
  return "?";
}

namespace {

// Rounds `whole / part` to the nearest positive integer.
int nearest_divisor_count(double whole, double part) {
  return std::max(1, static_cast<int>(std::llround(whole / part)));
}

int exact_ratio(double whole, double part, const char* what) {
  if (!(part > 0.0)) throw InvalidArgument("grid pitch must be positive");
  double q = whole / part;
  int k = static_cast<int>(std::llround(q));
  if (k < 1 || std::abs(q - k) > 1e-9 * std::max(1.0, q))
    throw NonIntegralRatio(std::string(what) + " must be an integer multiple of the pitch");
  return k;
}

}  // namespace

BuildParams default_build_params(int n, double side) {
  if (n < 2 || !(side > 0.0)) throw InvalidArgument("default_build_params: bad n or side");
  double ln_n = std::log(static_cast<double>(n));
  double s_target = std::cbrt(std::max(ln_n, 1.0));
  int ks = nearest_divisor_count(side, s_target);
  BuildParams params;
  params.s = side / ks;
  double per_s = params.s * std::pow(std::max(ln_n, 1.0), 1.0 / 6.0);
  int kt = std::max(1, static_cast<int>(std::llround(per_s)));
  params.t = params.s / kt;
  return params;
}

std::vector<Segment> emst_edges(const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 2) throw InvalidArgument("emst_edges needs at least two points");
  // Prim with squared distances; O(n^2) time, O(n) memory.
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<int> parent(n, -1);
  std::vector<char> in_tree(n, 0);
  best[0] = 0.0;
  std::vector<Segment> edges;
  edges.reserve(n - 1);
  for (int round = 0; round < n; ++round) {
    int u = -1;
    double bu = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      if (!in_tree[i] && best[i] < bu) { bu = best[i]; u = i; }
    if (u < 0) throw InvalidArgument("emst_edges: unreachable point");
    in_tree[u] = 1;
    if (parent[u] >= 0) {
      if (bu <= 0.0) throw CoincidentPoints("emst_edges: coincident points");
      edges.push_back({pts[parent[u]], pts[u]});
    }
    for (int i = 0; i < n; ++i) {
      if (in_tree[i]) continue;
      double dx = pts[i].x - pts[u].x, dy = pts[i].y - pts[u].y;
      double d2 = dx * dx + dy * dy;
      if (d2 < best[i]) { best[i] = d2; parent[i] = u; }
    }
  }
  return edges;
}

std::vector<Segment> medium_grid(double side, double s) {
  if (!(side > 0.0)) throw InvalidArgument("medium_grid: side must be positive");
  int k = exact_ratio(side, s, "medium_grid: window side");
  std::vector<Segment> out;
  out.reserve(2 * (k + 1));
  for (int i = 0; i <= k; ++i) {
    double c = (i == k) ? side : i * s;  // keep the far boundary exact
    out.push_back({{c, 0.0}, {c, side}});
    out.push_back({{0.0, c}, {side, c}});
  }
  return out;
}

HotspotResult hotspot_cells(const Configuration& config, double t) {
  config.validate();
  int k = exact_ratio(config.side, t, "hotspot_cells: window side");
  auto cell_index = [&](double coord) {
    int i = static_cast<int>(std::floor(coord / t));
    return std::clamp(i, 0, k - 1);
  };
  // Count points per occupied cell.
  std::vector<std::pair<int64_t, int>> occupied;  // (cell key, point index)
  occupied.reserve(config.points.size());
  for (int pi = 0; pi < config.n(); ++pi) {
    const Point& p = config.points[pi];
    int64_t key = static_cast<int64_t>(cell_index(p.x)) * k + cell_index(p.y);
    occupied.emplace_back(key, pi);
  }
  std::sort(occupied.begin(), occupied.end());

  HotspotResult result;
  // Deduplicate shared sides between adjacent hot cells: a vertical side at
  // grid coordinate (ix, iy) is keyed by its left cell column; similarly for
  // horizontal sides. Collect integer side keys, then unique.
  std::vector<std::pair<int64_t, int64_t>> vert_keys, horz_keys;  // (ix, iy)
  size_t a = 0;
  while (a < occupied.size()) {
    size_t b = a;
    while (b < occupied.size() && occupied[b].first == occupied[a].first) ++b;
    if (b - a >= 2) {
      int64_t key = occupied[a].first;
      int ix = static_cast<int>(key / k), iy = static_cast<int>(key % k);
      double x0 = ix * t, y0 = iy * t;
      result.cells.push_back({x0, y0, x0 + t, y0 + t});
      vert_keys.push_back({ix, iy});
      vert_keys.push_back({ix + 1, iy});
      horz_keys.push_back({ix, iy});
      horz_keys.push_back({ix, iy + 1});
      for (size_t j = a; j < b; ++j) {
        const Point& p = config.points[occupied[j].second];
        double dl = p.x - x0, dr = x0 + t - p.x;
        double db = p.y - y0, dt = y0 + t - p.y;
        double dmin = std::min(std::min(dl, dr), std::min(db, dt));
        if (dmin <= 1e-12) continue;  // already on the perimeter
        Point foot;
        if (dmin == dl) foot = {x0, p.y};
        else if (dmin == dr) foot = {x0 + t, p.y};
        else if (dmin == db) foot = {p.x, y0};
        else foot = {p.x, y0 + t};
        result.connectors.push_back({p, foot});
      }
    }
    a = b;
  }
  auto emit_unique = [&](std::vector<std::pair<int64_t, int64_t>>& keys, bool vertical) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (auto [i0, i1] : keys) {
      if (vertical) {
        double x = i0 * t, y = i1 * t;
        result.cell_sides.push_back({{x, y}, {x, y + t}});
      } else {
        double x = i0 * t, y = i1 * t;
        result.cell_sides.push_back({{x, y}, {x + t, y}});
      }
    }
  };
  emit_unique(vert_keys, true);
  emit_unique(horz_keys, false);
  return result;
}

namespace {

// Merges points closer than tol (greedy, first occurrence wins) and snaps
// coordinates within tol of a multiple of t onto it.
std::vector<Point> preprocess_points(const std::vector<Point>& raw, double t,
                                     double tol, int* merged) {
  std::vector<Point> pts;
  pts.reserve(raw.size());
  *merged = 0;
  for (Point p : raw) {
    double sx = std::round(p.x / t) * t;
    double sy = std::round(p.y / t) * t;
    if (std::abs(sx - p.x) <= tol) p.x = sx;
    if (std::abs(sy - p.y) <= tol) p.y = sy;
    bool dup = false;
    for (const Point& q : pts)
      if (dist(p, q) <= tol) { dup = true; break; }
    if (dup) ++*merged;
    else pts.push_back(p);
  }
  return pts;
}

double segment_total(const std::vector<Segment>& segs) {
  double sum = 0.0;
  for (const Segment& s : segs) sum += s.length();
  return sum;
}

}  // namespace

BuildResult build_network(const Configuration& config, const BuildParams& params) {
  config.validate();
  if (!(params.intensity >= 0.0) || !std::isfinite(params.intensity))
    throw InvalidArgument("build_network: intensity must be finite and >= 0");
  exact_ratio(config.side, params.s, "build_network: window side");
  exact_ratio(params.s, params.t, "build_network: medium pitch");

  BuildResult result;
  Configuration work = config;
  work.points = preprocess_points(config.points, params.t, 1e-9, &result.merged_points);
  if (work.n() < 2) throw InvalidArgument("build_network: fewer than two distinct points");

  std::vector<TaggedSegment> soup;
  std::vector<Segment> tree = emst_edges(work.points);
  result.accounting.baseline_tree_length = segment_total(tree);
  for (const Segment& s : tree) soup.push_back({s, Layer::Tree});
  for (const Segment& s : medium_grid(work.side, params.s))
    soup.push_back({s, Layer::MediumGrid});
  HotspotResult hot = hotspot_cells(work, params.t);
  for (const Segment& s : hot.cell_sides) soup.push_back({s, Layer::HotspotCell});
  for (const Segment& s : hot.connectors) soup.push_back({s, Layer::HotspotConnector});
  if (params.intensity > 0.0) {
    Rect window{0.0, 0.0, work.side, work.side};
    LineSample sample = sample_rect(window, {params.intensity, params.seed});
    for (const Line& line : sample.lines)
      if (auto chord = clip_line_to_rect(line, window))
        soup.push_back({*chord, Layer::PoissonLine});
  }

  std::vector<TaggedSegment> resolved = resolve_collinear_overlaps(soup);
  for (const TaggedSegment& ts : resolved) {
    double len = ts.seg.length();
    switch (ts.layer) {
      case Layer::Tree: result.accounting.tree += len; break;
      case Layer::MediumGrid: result.accounting.medium_grid += len; break;
      case Layer::HotspotCell: result.accounting.hotspot_cell += len; break;
      case Layer::HotspotConnector: result.accounting.hotspot_connector += len; break;
      case Layer::PoissonLine: result.accounting.poisson_line += len; break;
    }
  }
  result.accounting.total = result.accounting.tree + result.accounting.medium_grid +
                            result.accounting.hotspot_cell +
                            result.accounting.hotspot_connector +
                            result.accounting.poisson_line;

  result.network = planarize(resolved);
  result.network.point_nodes.reserve(work.n());
  {
    // Quantized coordinate index for batch point->node resolution.
    auto quant = [](double v) { return static_cast<int64_t>(std::llround(v / 1e-9)); };
    std::unordered_map<int64_t, std::vector<int>> index;
    const auto& nodes = result.network.nodes;
    for (int id = 0; id < static_cast<int>(nodes.size()); ++id)
      index[quant(nodes[static_cast<size_t>(id)].x) * 1000003 + quant(nodes[static_cast<size_t>(id)].y)]
          .push_back(id);
    for (const Point& p : work.points) {
      int found = -1;
      for (int64_t dx = -1; dx <= 1 && found < 0; ++dx)
        for (int64_t dy = -1; dy <= 1 && found < 0; ++dy) {
          auto it = index.find((quant(p.x) + dx) * 1000003 + (quant(p.y) + dy));
          if (it == index.end()) continue;
          for (int id : it->second) {
            const Point& q = nodes[static_cast<size_t>(id)];
            if (std::abs(q.x - p.x) <= 1e-9 && std::abs(q.y - p.y) <= 1e-9) {
              found = id;
              break;
            }
          }
        }
      if (found < 0) throw NodeMismatch("build_network: configuration point missing from network");
      result.network.point_nodes.push_back(found);
    }
  }

  // Every configuration point must live in one component.
  const PlanarNetwork& net = result.network;
  std::vector<int> comp(net.nodes.size(), -1);
  std::vector<int> stack{net.point_nodes[0]};
  comp[net.point_nodes[0]] = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (auto [v, w] : net.adjacency[u]) {
      (void)w;
      if (comp[v] < 0) { comp[v] = 0; stack.push_back(v); }
    }
  }
  for (int node : net.point_nodes)
    if (comp[node] < 0) throw Disconnected("build_network: configuration points split across components");
  return result;
}

}  // namespace netgeo
