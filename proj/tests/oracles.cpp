#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

namespace oracle {

double line_eval(const Line& l, Point q) {
  return q.x * std::cos(l.angle) + q.y * std::sin(l.angle) - l.offset;
}

std::optional<Point> cramer_intersect(const Line& a, const Line& b) {
  double a11 = std::cos(a.angle), a12 = std::sin(a.angle);
  double a21 = std::cos(b.angle), a22 = std::sin(b.angle);
  double det = a11 * a22 - a12 * a21;
  if (std::fabs(det) < 1e-12) return std::nullopt;
  return Point{(a.offset * a22 - b.offset * a12) / det,
               (a11 * b.offset - a21 * a.offset) / det};
}

SegIntersection segment_intersect_param(const Segment& s1, const Segment& s2,
                                        double tol) {
  using netgeo::cross;
  using netgeo::dot;
  Point r = s1.b - s1.a, s = s2.b - s2.a;
  double denom = cross(r, s);
  Point qp = s2.a - s1.a;
  double lr = netgeo::norm(r), ls = netgeo::norm(s);

  if (std::fabs(denom) <= 1e-12 * lr * ls) {
    if (std::fabs(cross(qp, r)) > tol * std::max(1.0, lr)) return {};
    double rr = dot(r, r);
    double t0 = dot(qp, r) / rr;
    double t1 = t0 + dot(s, r) / rr;
    if (t0 > t1) std::swap(t0, t1);
    double lo = std::max(t0, 0.0), hi = std::min(t1, 1.0);
    if (hi * lr < -tol || lo * lr > lr + tol) return {};
    if ((hi - lo) * lr > tol) return {2, {}};
    if (hi * lr < lo * lr - tol) return {};
    double tm = 0.5 * (lo + hi);
    return {1, s1.a + tm * r};
  }
  double t = cross(qp, s) / denom;
  double u = cross(qp, r) / denom;
  if (t * lr < -tol || t * lr > lr + tol) return {};
  if (u * ls < -tol || u * ls > ls + tol) return {};
  return {1, s1.a + std::clamp(t, 0.0, 1.0) * r};
}

namespace {
std::vector<Point> clip_polygon_halfplane(const std::vector<Point>& poly,
                                          double nx, double ny, double c) {
  // Keep {q : nx*q.x + ny*q.y <= c}. Points within eps of the boundary count
  // as on it: without the band, a second clip against the reversed half-plane
  // would interpolate between two points that are both numerically on the
  // line, yielding garbage positions.
  const double eps = 1e-9;
  std::vector<Point> out;
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    Point a = poly[i], b = poly[(i + 1) % n];
    double da = nx * a.x + ny * a.y - c;
    double db = nx * b.x + ny * b.y - c;
    if (da <= eps) out.push_back(a);
    if ((da < -eps && db > eps) || (da > eps && db < -eps)) {
      double t = da / (da - db);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}
}  // namespace

std::optional<Segment> clip_line_rect_sh(const Line& l, const Rect& r) {
  std::vector<Point> poly = {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
  double nx = std::cos(l.angle), ny = std::sin(l.angle);
  poly = clip_polygon_halfplane(poly, nx, ny, l.offset);
  // Second clip with the reversed half-plane collapses the polygon onto the line.
  poly = clip_polygon_halfplane(poly, -nx, -ny, -l.offset);
  if (poly.size() < 2) return std::nullopt;
  // Pick the two extreme points along the line direction.
  Point d = l.direction();
  auto proj = [&](Point q) { return q.x * d.x + q.y * d.y; };
  Point lo = poly[0], hi = poly[0];
  for (const Point& q : poly) {
    if (proj(q) < proj(lo)) lo = q;
    if (proj(q) > proj(hi)) hi = q;
  }
  if (netgeo::dist(lo, hi) < 1e-12 * std::max({1.0, std::fabs(r.x1), std::fabs(r.y1)}))
    return std::nullopt;
  return Segment{lo, hi};
}

std::vector<Point> arrangement_cell_vertices(const std::vector<Line>& lines,
                                             Point v1, Point v2, const Rect& window,
                                             double tol) {
  // Constraint set: the retained lines (as half-planes containing the points)
  // plus the four window edges.
  struct HalfPlane {
    double nx, ny, c;  // keep nx*x + ny*y <= c
  };
  std::vector<HalfPlane> hp;
  std::vector<Line> all_lines;
  for (const Line& l : lines) {
    double e1 = line_eval(l, v1), e2 = line_eval(l, v2);
    double scale = 1e-12 * std::max({1.0, std::fabs(l.offset), netgeo::norm(v1),
                                     netgeo::norm(v2)});
    int s1 = e1 > scale ? 1 : (e1 < -scale ? -1 : 0);
    int s2 = e2 > scale ? 1 : (e2 < -scale ? -1 : 0);
    if (s1 * s2 < 0) continue;  // separating line deleted
    int keep = s1 != 0 ? s1 : s2;
    if (keep == 0) continue;
    double nx = std::cos(l.angle), ny = std::sin(l.angle);
    // keep * (n.q - c) >= 0  <=>  (-keep*n).q <= -keep*c
    hp.push_back({-keep * nx, -keep * ny, -keep * l.offset});
    all_lines.push_back(l);
  }
  hp.push_back({1, 0, window.x1});
  hp.push_back({-1, 0, -window.x0});
  hp.push_back({0, 1, window.y1});
  hp.push_back({0, -1, -window.y0});

  // Candidate vertices: all pairwise boundary intersections.
  std::vector<Point> cand;
  for (size_t i = 0; i < hp.size(); ++i) {
    for (size_t j = i + 1; j < hp.size(); ++j) {
      double det = hp[i].nx * hp[j].ny - hp[i].ny * hp[j].nx;
      if (std::fabs(det) < 1e-12) continue;
      cand.push_back({(hp[i].c * hp[j].ny - hp[j].c * hp[i].ny) / det,
                      (hp[i].nx * hp[j].c - hp[j].nx * hp[i].c) / det});
    }
  }
  // Filter: candidate must satisfy every half-plane (within tol).
  std::vector<Point> verts;
  for (const Point& q : cand) {
    bool ok = true;
    for (const HalfPlane& h : hp) {
      if (h.nx * q.x + h.ny * q.y - h.c > tol) {
        ok = false;
        break;
      }
    }
    if (ok) verts.push_back(q);
  }
  // Dedupe.
  std::vector<Point> uniq;
  for (const Point& q : verts) {
    bool dup = false;
    for (const Point& u : uniq)
      if (netgeo::dist(q, u) <= 10 * tol) {
        dup = true;
        break;
      }
    if (!dup) uniq.push_back(q);
  }
  if (uniq.size() < 3) return uniq;
  // Order counterclockwise around the centroid.
  Point cen{0, 0};
  for (const Point& q : uniq) cen = cen + q;
  cen = (1.0 / uniq.size()) * cen;
  std::sort(uniq.begin(), uniq.end(), [&](Point a, Point b) {
    return std::atan2(a.y - cen.y, a.x - cen.x) < std::atan2(b.y - cen.y, b.x - cen.x);
  });
  return uniq;
}

bool same_cyclic_polygon(const std::vector<Point>& a, const std::vector<Point>& b,
                         double tol) {
  if (a.size() != b.size()) return false;
  size_t n = a.size();
  if (n == 0) return true;
  for (int dir = 0; dir < 2; ++dir) {
    for (size_t shift = 0; shift < n; ++shift) {
      bool ok = true;
      for (size_t i = 0; i < n && ok; ++i) {
        size_t j = dir == 0 ? (shift + i) % n : (shift + n - i) % n;
        ok = netgeo::dist(a[i], b[j]) <= tol;
      }
      if (ok) return true;
    }
  }
  return false;
}

double mst_length_exhaustive(const std::vector<Point>& pts) {
  int n = static_cast<int>(pts.size());
  if (n <= 1) return 0.0;
  if (n == 2) return netgeo::dist(pts[0], pts[1]);
  // Enumerate all n^(n-2) labelled trees via Pruefer sequences.
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> seq(n - 2, 0);
  auto tree_length = [&](const std::vector<int>& pruefer) {
    std::vector<int> deg(n, 1);
    for (int v : pruefer) deg[v]++;
    double len = 0.0;
    std::vector<bool> used(n, false);
    for (int v : pruefer) {
      for (int leaf = 0; leaf < n; ++leaf) {
        if (deg[leaf] == 1 && !used[leaf]) {
          len += netgeo::dist(pts[leaf], pts[v]);
          used[leaf] = true;
          deg[v]--;
          break;
        }
      }
    }
    // Two nodes of degree 1 remain; join them.
    int u = -1, w = -1;
    for (int i = 0; i < n; ++i) {
      if (!used[i] && deg[i] == 1) {
        if (u < 0)
          u = i;
        else
          w = i;
      }
    }
    len += netgeo::dist(pts[u], pts[w]);
    return len;
  };
  for (;;) {
    best = std::min(best, tree_length(seq));
    int k = n - 3;
    while (k >= 0 && seq[k] == n - 1) seq[k--] = 0;
    if (k < 0) break;
    seq[k]++;
  }
  return best;
}

std::vector<std::vector<double>> floyd_warshall(
    int nodes, const std::vector<std::tuple<int, int, double>>& edges) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(nodes, std::vector<double>(nodes, inf));
  for (int i = 0; i < nodes; ++i) d[i][i] = 0.0;
  for (auto [u, v, w] : edges) {
    d[u][v] = std::min(d[u][v], w);
    d[v][u] = std::min(d[v][u], w);
  }
  for (int k = 0; k < nodes; ++k)
    for (int i = 0; i < nodes; ++i)
      for (int j = 0; j < nodes; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

double assignment_bruteforce(const std::vector<std::vector<double>>& cost) {
  int n = static_cast<int>(cost.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += cost[i][perm[i]];
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace oracle
