#pragma once

#include <cmath>
#include <optional>

#include "netgeo/errors.hpp"

namespace netgeo {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(b - a); }

// Undirected line in normal form: { q : q.x*cos(angle) + q.y*sin(angle) = offset },
// with angle in [0, pi) and offset the signed distance from the origin. This is the
// (p, alpha) parametrization used for all line-process measure computations, so every
// constructor must normalize into that fundamental domain.
struct Line {
  double offset = 0.0;  // p
  double angle = 0.0;   // alpha in [0, pi)

  Point normal() const { return {std::cos(angle), std::sin(angle)}; }
  Point direction() const { return {-std::sin(angle), std::cos(angle)}; }
  // Signed offset of q from the line (positive on the side the normal points to).
  double eval(Point q) const {
    return q.x * std::cos(angle) + q.y * std::sin(angle) - offset;
  }
  Point foot() const { return offset * normal(); }

  // Normalizes an arbitrary (normal, offset) pair; throws DegenerateSegment if the
  // normal is (numerically) zero.
  static Line from_normal_offset(double nx, double ny, double c);
  // Line through two distinct points; throws DegenerateSegment if they coincide.
  static Line through_points(Point a, Point b);
};

struct Segment {
  Point a;
  Point b;
  double length() const { return dist(a, b); }
  Point midpoint() const { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }
};

// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double semiperimeter() const { return width() + height(); }
  Point center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  bool contains(Point q, double tol = 0.0) const {
    return q.x >= x0 - tol && q.x <= x1 + tol && q.y >= y0 - tol && q.y <= y1 + tol;
  }
  bool strictly_contains(Point q) const {
    return q.x > x0 && q.x < x1 && q.y > y0 && q.y < y1;
  }
  void validate() const {
    if (!(x1 > x0) || !(y1 > y0)) throw DegenerateRect();
  }
};

// Sign of the point's offset from the line with a scale-aware zero band:
// |eval| <= 1e-12 * max(1, |p|, |q|) counts as "on the line" (returns 0).
int side_of(const Line& l, Point q);

// True iff u and v lie strictly on opposite sides of l. Points on the line
// separate nothing.
bool separates(const Line& l, Point u, Point v);

// Intersection point of two lines, or absent when the angle between them is
// below 1e-12 radians (parallel or nearly so).
std::optional<Point> intersect_lines(const Line& l1, const Line& l2);

// Intersection of two segments including endpoint touches, or absent when
// disjoint. Collinear segments overlapping in more than a point are a contract
// violation and throw CollinearOverlap; collinear segments touching at exactly
// one endpoint return that endpoint.
std::optional<Point> intersect_segments(const Segment& s1, const Segment& s2);

// Chord of the line inside the rectangle, or absent when the line misses it
// (corner grazes below 1e-12 * scale count as misses).
std::optional<Segment> clip_line_to_rect(const Line& l, const Rect& r);

}  // namespace netgeo
