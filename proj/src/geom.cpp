#include "netgeo/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netgeo {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Line Line::from_normal_offset(double nx, double ny, double c) {
  double len = std::hypot(nx, ny);
  if (!(len > 1e-300)) throw DegenerateSegment("zero normal vector");
  nx /= len;
  ny /= len;
  c /= len;
  // Fold into alpha in [0, pi): flip the normal (and offset) if it points into
  // the lower half-plane, or along the negative x-axis.
  if (ny < 0.0 || (ny == 0.0 && nx < 0.0)) {
    nx = -nx;
    ny = -ny;
    c = -c;
  }
  double alpha = std::atan2(ny, nx);
  if (alpha < 0.0) alpha = 0.0;        // atan2 noise for ny == +0
  if (alpha >= kPi) alpha -= kPi;      // paranoia: keep the fundamental domain
  return Line{c, alpha};
}

Line Line::through_points(Point a, Point b) {
  Point d = b - a;
  double len = norm(d);
  if (!(len > 1e-300)) throw DegenerateSegment("coincident points define no line");
  // Normal is the direction rotated by +90 degrees.
  return from_normal_offset(-d.y / len, d.x / len, (-d.y * a.x + d.x * a.y) / len);
}

int side_of(const Line& l, Point q) {
  double v = l.eval(q);
  double eps = 1e-12 * std::max({1.0, std::fabs(l.offset), norm(q)});
  if (v > eps) return 1;
  if (v < -eps) return -1;
  return 0;
}

bool separates(const Line& l, Point u, Point v) {
  return side_of(l, u) * side_of(l, v) < 0;
}

std::optional<Point> intersect_lines(const Line& l1, const Line& l2) {
  double d = std::fabs(l1.angle - l2.angle);
  d = std::min(d, kPi - d);  // undirected angle distance on [0, pi)
  if (d <= 1e-12) return std::nullopt;
  double c1 = std::cos(l1.angle), s1 = std::sin(l1.angle);
  double c2 = std::cos(l2.angle), s2 = std::sin(l2.angle);
  double det = c1 * s2 - s1 * c2;  // = sin(a2 - a1), bounded away from 0 here
  return Point{(l1.offset * s2 - l2.offset * s1) / det,
               (l2.offset * c1 - l1.offset * c2) / det};
}

std::optional<Point> intersect_segments(const Segment& s1, const Segment& s2) {
  const Point p = s1.a, r = s1.b - s1.a;
  const Point q = s2.a, s = s2.b - s2.a;
  const double lr = norm(r), ls = norm(s);
  const double scale = std::max({1.0, lr, ls, norm(p), norm(q)});
  const double tol = 1e-9;  // absolute position tolerance for endpoint touches
  const double denom = cross(r, s);
  const Point pq = q - p;

  if (std::fabs(denom) <= 1e-12 * lr * ls) {
    // Parallel. Collinear iff q is on the supporting line of s1.
    if (std::fabs(cross(pq, r)) > tol * std::max(1.0, lr)) return std::nullopt;
    // Collinear: compare the two parameter intervals along r.
    double rr = dot(r, r);
    if (!(rr > 0.0)) {
      // s1 is a point; degenerate inputs are not part of the contract, treat as
      // a touch iff the point lies on s2.
      double t2 = dot(pq, s);
      (void)t2;
      return std::nullopt;
    }
    double t0 = dot(pq, r) / rr;
    double t1 = t0 + dot(s, r) / rr;
    double lo = std::min(t0, t1), hi = std::max(t0, t1);
    double eps_t = tol / std::max(lr, 1e-30);
    if (hi < -eps_t || lo > 1.0 + eps_t) return std::nullopt;
    double olo = std::max(lo, 0.0), ohi = std::min(hi, 1.0);
    if ((ohi - olo) * lr > tol)
      throw CollinearOverlap("collinear segments overlap in more than a point");
    double tm = 0.5 * (olo + ohi);
    return p + tm * r;
  }

  double t = cross(pq, s) / denom;
  double u = cross(pq, r) / denom;
  double eps_t = tol / std::max(lr, 1e-30);
  double eps_u = tol / std::max(ls, 1e-30);
  (void)scale;
  if (t < -eps_t || t > 1.0 + eps_t || u < -eps_u || u > 1.0 + eps_u)
    return std::nullopt;
  return p + std::clamp(t, 0.0, 1.0) * r;
}

std::optional<Segment> clip_line_to_rect(const Line& l, const Rect& r) {
  r.validate();
  const Point o = l.foot();
  const Point d = l.direction();
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  // Slab clipping against x in [x0, x1] and y in [y0, y1].
  auto slab = [&](double od, double dd, double lo, double hi) -> bool {
    if (std::fabs(dd) < 1e-15) return od >= lo - 1e-12 && od <= hi + 1e-12;
    double a = (lo - od) / dd, b = (hi - od) / dd;
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
    return true;
  };
  if (!slab(o.x, d.x, r.x0, r.x1)) return std::nullopt;
  if (!slab(o.y, d.y, r.y0, r.y1)) return std::nullopt;
  double scale = std::max({1.0, std::fabs(r.x0), std::fabs(r.x1), std::fabs(r.y0),
                           std::fabs(r.y1), std::fabs(l.offset)});
  if (!(t1 - t0 > 1e-12 * scale)) return std::nullopt;
  return Segment{o + t0 * d, o + t1 * d};
}

}  // namespace netgeo
