#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "netgeo/errors.hpp"
#include "netgeo/netbuild.hpp"

namespace netgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMergeTol = 1e-9;   // node and collinear-group tolerance
constexpr double kDropLen = 1e-12;   // segments below this are discarded

int layer_priority(Layer layer) {
  switch (layer) {
    case Layer::MediumGrid: return 0;
    case Layer::HotspotCell: return 1;
    case Layer::HotspotConnector: return 2;
    case Layer::Tree: return 3;
    case Layer::PoissonLine: return 4;
  }
  return 99;
}

struct LineKey {
  double angle;
  double offset;
  int index;  // into the input soup
};

// Claims sub-intervals of a set of mutually collinear segments for the
// highest-priority layer covering each piece.
void resolve_group(const std::vector<TaggedSegment>& input,
                   const std::vector<LineKey>& group,
                   std::vector<TaggedSegment>& out) {
  double angle = group.front().angle;
  Point dir{-std::sin(angle), std::cos(angle)};
  struct Member {
    double lo, hi;
    Point a, b;  // endpoints ordered by projection
    int pri;
    int index;
  };
  std::vector<Member> members;
  members.reserve(group.size());
  std::vector<double> stops;
  for (const LineKey& key : group) {
    const TaggedSegment& ts = input[key.index];
    double ua = dot(ts.seg.a, dir), ub = dot(ts.seg.b, dir);
    Member m;
    if (ua <= ub) m = {ua, ub, ts.seg.a, ts.seg.b, layer_priority(ts.layer), key.index};
    else m = {ub, ua, ts.seg.b, ts.seg.a, layer_priority(ts.layer), key.index};
    members.push_back(m);
    stops.push_back(m.lo);
    stops.push_back(m.hi);
  }
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  auto point_at = [&](const Member& m, double u) {
    if (u - m.lo <= kDropLen) return m.a;
    if (m.hi - u <= kDropLen) return m.b;
    double tau = (u - m.lo) / (m.hi - m.lo);
    return Point{m.a.x + tau * (m.b.x - m.a.x), m.a.y + tau * (m.b.y - m.a.y)};
  };

  int run_owner = -1;
  double run_lo = 0.0;
  auto flush = [&](double run_hi) {
    if (run_owner < 0) return;
    const Member& m = members[static_cast<size_t>(run_owner)];
    Point a = point_at(m, run_lo), b = point_at(m, run_hi);
    if (dist(a, b) > kDropLen) out.push_back({{a, b}, input[m.index].layer});
    run_owner = -1;
  };
  for (size_t i = 0; i + 1 < stops.size(); ++i) {
    double u1 = stops[i], u2 = stops[i + 1];
    if (u2 - u1 <= kDropLen) continue;
    double mid = 0.5 * (u1 + u2);
    int owner = -1;
    for (size_t j = 0; j < members.size(); ++j) {
      const Member& m = members[j];
      if (m.lo <= mid && mid <= m.hi &&
          (owner < 0 || m.pri < members[static_cast<size_t>(owner)].pri))
        owner = static_cast<int>(j);
    }
    if (owner != run_owner) {
      flush(u1);
      if (owner >= 0) { run_owner = owner; run_lo = u1; }
    }
  }
  flush(stops.empty() ? 0.0 : stops.back());
}

}  // namespace

std::vector<TaggedSegment> resolve_collinear_overlaps(
    const std::vector<TaggedSegment>& input) {
  std::vector<LineKey> keys;
  keys.reserve(input.size());
  std::vector<TaggedSegment> out;
  for (int i = 0; i < static_cast<int>(input.size()); ++i) {
    if (input[i].seg.length() <= kDropLen) continue;
    Line line = Line::through_points(input[i].seg.a, input[i].seg.b);
    double angle = line.angle, offset = line.offset;
    if (angle > kPi - 1e-8) { angle -= kPi; offset = -offset; }
    keys.push_back({angle, offset, i});
  }
  std::sort(keys.begin(), keys.end(), [](const LineKey& a, const LineKey& b) {
    if (a.angle != b.angle) return a.angle < b.angle;
    if (a.offset != b.offset) return a.offset < b.offset;
    return a.index < b.index;
  });

  // Chain segments whose supporting lines agree within tolerance, then split
  // each angle run by offset.
  size_t a = 0;
  while (a < keys.size()) {
    size_t b = a + 1;
    while (b < keys.size() && keys[b].angle - keys[b - 1].angle <= kMergeTol) ++b;
    std::vector<LineKey> run(keys.begin() + a, keys.begin() + b);
    std::sort(run.begin(), run.end(), [](const LineKey& x, const LineKey& y) {
      if (x.offset != y.offset) return x.offset < y.offset;
      return x.index < y.index;
    });
    size_t c = 0;
    while (c < run.size()) {
      size_t d = c + 1;
      double scale = std::max(1.0, std::abs(run[c].offset));
      while (d < run.size() && run[d].offset - run[d - 1].offset <= kMergeTol * scale) ++d;
      if (d - c == 1) {
        out.push_back(input[run[c].index]);
      } else {
        std::vector<LineKey> group(run.begin() + c, run.begin() + d);
        std::sort(group.begin(), group.end(),
                  [](const LineKey& x, const LineKey& y) { return x.index < y.index; });
        resolve_group(input, group, out);
      }
      c = d;
    }
    a = b;
  }
  return out;
}

namespace {

struct NodeRegistry {
  std::unordered_map<int64_t, std::vector<int>> buckets;
  std::vector<Point>* nodes;

  static int64_t key_of(int64_t qx, int64_t qy) {
    return qx * 0x9E3779B97F4A7C15LL ^ (qy + 0x7F4A7C15LL);
  }
  int find_or_add(Point p) {
    int64_t qx = static_cast<int64_t>(std::llround(p.x / kMergeTol));
    int64_t qy = static_cast<int64_t>(std::llround(p.y / kMergeTol));
    for (int64_t dx = -1; dx <= 1; ++dx)
      for (int64_t dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find(key_of(qx + dx, qy + dy));
        if (it == buckets.end()) continue;
        for (int id : it->second) {
          const Point& q = (*nodes)[static_cast<size_t>(id)];
          if (std::abs(q.x - p.x) <= kMergeTol && std::abs(q.y - p.y) <= kMergeTol)
            return id;
        }
      }
    int id = static_cast<int>(nodes->size());
    nodes->push_back(p);
    buckets[key_of(qx, qy)].push_back(id);
    return id;
  }
};

// Visits the bucket-grid cells along a segment (conservative DDA) plus the
// 3x3 neighborhoods of its endpoints, so touches near cell borders are found.
template <typename Fn>
void visit_cells(const Segment& seg, Point origin, double h, int grid_n, Fn&& fn) {
  auto cell_of = [&](Point p, int& ix, int& iy) {
    ix = std::clamp(static_cast<int>(std::floor((p.x - origin.x) / h)), 0, grid_n - 1);
    iy = std::clamp(static_cast<int>(std::floor((p.y - origin.y) / h)), 0, grid_n - 1);
  };
  int ax, ay, bx, by;
  cell_of(seg.a, ax, ay);
  cell_of(seg.b, bx, by);
  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy) {
      int x1 = std::clamp(ax + dx, 0, grid_n - 1), y1 = std::clamp(ay + dy, 0, grid_n - 1);
      int x2 = std::clamp(bx + dx, 0, grid_n - 1), y2 = std::clamp(by + dy, 0, grid_n - 1);
      fn(x1, y1);
      fn(x2, y2);
    }
  // DDA walk between the endpoint cells.
  double dx = seg.b.x - seg.a.x, dy = seg.b.y - seg.a.y;
  int ix = ax, iy = ay;
  int step_x = dx > 0 ? 1 : -1, step_y = dy > 0 ? 1 : -1;
  double tx = std::numeric_limits<double>::infinity();
  double ty = std::numeric_limits<double>::infinity();
  if (dx != 0.0) {
    double bound = origin.x + (ix + (step_x > 0 ? 1 : 0)) * h;
    tx = (bound - seg.a.x) / dx;
  }
  if (dy != 0.0) {
    double bound = origin.y + (iy + (step_y > 0 ? 1 : 0)) * h;
    ty = (bound - seg.a.y) / dy;
  }
  double dtx = dx != 0.0 ? std::abs(h / dx) : 0.0;
  double dty = dy != 0.0 ? std::abs(h / dy) : 0.0;
  int guard = 4 * grid_n + 8;
  while (guard-- > 0) {
    fn(ix, iy);
    if (ix == bx && iy == by) break;
    if (tx <= ty) {
      if (tx > 1.0) break;
      ix += step_x;
      tx += dtx;
    } else {
      if (ty > 1.0) break;
      iy += step_y;
      ty += dty;
    }
    if (ix < 0 || iy < 0 || ix >= grid_n || iy >= grid_n) break;
  }
}

}  // namespace

PlanarNetwork planarize(const std::vector<TaggedSegment>& input) {
  std::vector<TaggedSegment> segs;
  segs.reserve(input.size());
  for (const TaggedSegment& ts : input)
    if (ts.seg.length() > kDropLen) segs.push_back(ts);

  PlanarNetwork net;
  if (segs.empty()) return net;

  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-lo.x, -lo.y};
  for (const TaggedSegment& ts : segs)
    for (Point p : {ts.seg.a, ts.seg.b}) {
      lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
      hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
    }
  double extent = std::max({hi.x - lo.x, hi.y - lo.y, 1e-6});
  int grid_n = std::clamp(2 * static_cast<int>(std::sqrt(static_cast<double>(segs.size()))),
                          8, 512);
  double h = extent / grid_n * (1.0 + 1e-9);
  // Incommensurate shift keeps grid-aligned geometry off bucket borders.
  Point origin{lo.x - 0.3183098861837907 * h, lo.y - 0.3183098861837907 * h};

  std::vector<std::vector<int>> cells(static_cast<size_t>(grid_n) * grid_n);
  for (int i = 0; i < static_cast<int>(segs.size()); ++i)
    visit_cells(segs[static_cast<size_t>(i)].seg, origin, h, grid_n,
                [&](int ix, int iy) {
                  std::vector<int>& cell = cells[static_cast<size_t>(iy) * grid_n + ix];
                  if (cell.empty() || cell.back() != i) cell.push_back(i);
                });

  std::vector<uint64_t> pairs;
  for (const std::vector<int>& cell : cells)
    for (size_t i = 0; i < cell.size(); ++i)
      for (size_t j = i + 1; j < cell.size(); ++j) {
        uint32_t a = static_cast<uint32_t>(std::min(cell[i], cell[j]));
        uint32_t b = static_cast<uint32_t>(std::max(cell[i], cell[j]));
        pairs.push_back((static_cast<uint64_t>(a) << 32) | b);
      }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  struct Cut {
    double u;  // arc-length parameter from the segment's first endpoint
    Point p;
  };
  std::vector<std::vector<Cut>> cuts(segs.size());
  for (size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i].seg;
    cuts[i].push_back({0.0, s.a});
    cuts[i].push_back({s.length(), s.b});
  }
  for (uint64_t pk : pairs) {
    int i = static_cast<int>(pk >> 32), j = static_cast<int>(pk & 0xFFFFFFFFu);
    const Segment& si = segs[static_cast<size_t>(i)].seg;
    const Segment& sj = segs[static_cast<size_t>(j)].seg;
    auto hit = intersect_segments(si, sj);  // throws CollinearOverlap on true overlap
    if (!hit) continue;
    auto param = [](const Segment& s, Point p) {
      double len = s.length();
      Point d{(s.b.x - s.a.x) / len, (s.b.y - s.a.y) / len};
      return std::clamp(dot({p.x - s.a.x, p.y - s.a.y}, d), 0.0, len);
    };
    cuts[static_cast<size_t>(i)].push_back({param(si, *hit), *hit});
    cuts[static_cast<size_t>(j)].push_back({param(sj, *hit), *hit});
  }

  NodeRegistry registry;
  registry.nodes = &net.nodes;
  for (size_t i = 0; i < segs.size(); ++i) {
    std::vector<Cut>& cs = cuts[i];
    std::sort(cs.begin(), cs.end(), [](const Cut& a, const Cut& b) { return a.u < b.u; });
    int prev_node = -1;
    double prev_u = 0.0;
    for (const Cut& c : cs) {
      if (prev_node >= 0 && c.u - prev_u <= kMergeTol) continue;
      int node = registry.find_or_add(c.p);
      if (prev_node >= 0 && node != prev_node) {
        double len = dist(net.nodes[static_cast<size_t>(prev_node)],
                              net.nodes[static_cast<size_t>(node)]);
        if (len > kDropLen)
          net.edges.push_back({prev_node, node, len, segs[i].layer});
      }
      prev_node = node;
      prev_u = c.u;
    }
  }
  net.build_adjacency();
  return net;
}

void PlanarNetwork::build_adjacency() {
  adjacency.assign(nodes.size(), {});
  for (const Edge& e : edges) {
    adjacency[static_cast<size_t>(e.u)].push_back({e.v, e.length});
    adjacency[static_cast<size_t>(e.v)].push_back({e.u, e.length});
  }
}

double PlanarNetwork::total_length() const {
  double sum = 0.0;
  for (const Edge& e : edges) sum += e.length;
  return sum;
}

int PlanarNetwork::find_node(Point q, double tol) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (std::abs(nodes[i].x - q.x) <= tol && std::abs(nodes[i].y - q.y) <= tol)
      return static_cast<int>(i);
  throw NodeMismatch("find_node: no network node at the requested point");
}

}  // namespace netgeo
