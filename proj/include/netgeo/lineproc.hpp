#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "netgeo/geom.hpp"
#include "netgeo/rng.hpp"

namespace netgeo {

// Stationary, isotropic Poisson line process in the (p, alpha) normal form:
// intensity measure (intensity/2) dp dalpha over R x [0, pi). The factor 1/2
// normalizes so that at intensity 1 a unit-length segment is hit by one line
// on average; equivalently, the number of lines hitting a convex body K is
// Poisson with mean intensity * semiperimeter(K) (Cauchy's formula).
struct LineProcessParams {
  double intensity = 1.0;
  uint64_t seed = 0;
};

// Window the sample was drawn for, kept for accounting and reproducibility.
struct SampleWindow {
  enum class Kind { Disk, Rectangle, Tube };
  Kind kind = Kind::Disk;
  Point center;        // disk center, rect center, or segment midpoint
  double radius = 0;   // disk
  Rect rect;           // rectangle
  Point v1, v2;        // tube endpoints
  double half_width = 0;  // tube
};

struct LineSample {
  std::vector<Line> lines;
  SampleWindow window;
  LineProcessParams params;
};

// Mean number of process lines hitting a disk of the given radius.
double hitting_measure_disk(double radius, double intensity);
// Mean number of process lines hitting (crossing) a segment of the given length.
double hitting_measure_segment(double length, double intensity);
// Mean number of process lines hitting an axis-aligned rectangle.
double hitting_measure_rect(const Rect& r, double intensity);

// All process lines hitting the disk. Deterministic in (seed, stream).
LineSample sample_disk(Point center, double radius, const LineProcessParams& params,
                       uint64_t stream = 0);
// All process lines hitting the rectangle.
LineSample sample_rect(const Rect& r, const LineProcessParams& params,
                       uint64_t stream = 0);

// Conditional sample for the two-point cell: all process lines that hit the
// tube (the rectangle obtained by inflating segment v1v2 by half_width in every
// direction of its own frame) but do NOT separate v1 from v2. Lines separating
// the two points are never generated instead of being generated and discarded,
// which keeps the cost proportional to the non-separating measure
// 4 * intensity * half_width.
LineSample sample_tube_nonseparating(Point v1, Point v2, double half_width,
                                     const LineProcessParams& params,
                                     uint64_t stream = 0);

// Line in component form {q : nx*q.x + ny*q.y = c} with ny >= 0. The hot
// Monte Carlo path works with these because the flank inversions yield the
// normal components algebraically, with no trigonometric calls at all.
struct LineNc {
  double nx, ny, c;
  Line to_line() const;
};

// Streaming form used by the Monte Carlo driver: generates the non-separating
// lines with tube offset in (w_lo, w_hi] and feeds them to sink one at a time
// without materializing a vector. Lines are expressed in the frame whose
// x-axis goes v1 -> v2 with origin at the segment midpoint. The number of
// lines generated is returned.
uint64_t for_each_tube_annulus_line(double separation, double w_lo, double w_hi,
                                    double intensity, Rng& rng,
                                    const std::function<void(const LineNc&)>& sink);

// Non-separating tube measure for the annulus (w_lo, w_hi]: 4*intensity*(w_hi-w_lo).
double tube_annulus_measure(double w_lo, double w_hi, double intensity);

// Pairwise crossings between two samples, each tagged with the crossing angle
// xi = (alpha1 - alpha2) mod pi in [0, pi). The circular difference (not the
// folded absolute one) is the convention under which crossings of two
// independent isotropic processes carry the mark density sin(xi)/2.
struct CrossingMark {
  Point point;
  double angle;
};
std::vector<CrossingMark> intersection_angle_samples(const LineSample& a,
                                                     const LineSample& b);

}  // namespace netgeo
