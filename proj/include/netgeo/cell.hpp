#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netgeo/geom.hpp"
#include "netgeo/lineproc.hpp"

namespace netgeo {

inline constexpr double kEulerGamma = 0.57721566490153286061;

// Convex polygon with counterclockwise vertices. closed == true means the
// boundary consists entirely of sampled/supplied lines; closed == false means
// at least one edge still lies on the clipping window.
struct ConvexCell {
  std::vector<Point> vertices;
  bool closed = false;
};

// Sum of edge lengths (including the wrap-around edge). Throws DegenerateCell
// for fewer than 3 vertices.
double perimeter(const ConvexCell& cell);

// Cell of the arrangement that contains both v1 and v2 after deleting every
// line separating them, intersected with the window. Lines through one of the
// points contribute the closed half-plane containing the other point; lines
// through both points (measure zero) impose no constraint. Both points must be
// strictly inside the window (PointsOutsideWindow otherwise).
ConvexCell two_point_cell(std::span<const Line> lines, Point v1, Point v2,
                          const Rect& window);

// Common result type for the three J_m evaluation routes. std_error is set
// for Monte Carlo estimates, abs_tolerance for quadrature; the closed-form
// asymptotic sets neither.
struct EstimateReport {
  double value = 0.0;
  std::optional<double> std_error;
  std::optional<double> abs_tolerance;
  int64_t replicates = 0;
  uint64_t seed = 0;
  std::string meta;
};

// Monte Carlo estimate of the mean perimeter excess E[perimeter] - 2m of the
// two-point cell at separation m under the given process intensity. Each
// replicate draws only non-separating lines inside a tube around the segment
// (starting half-width max(10/intensity, 0.01*m)), doubling the width and
// sampling just the fresh annulus until the cell closes strictly inside the
// tube; NonConvergentWidening after 16 doublings. Replicates use independent
// RNG streams indexed by replicate number, so the result is identical however
// many threads run them.
EstimateReport estimate_jm_mc(double m, double intensity, int64_t replicates,
                              uint64_t seed);

// Deterministic evaluation of the same quantity for unit intensity via the
// exact double integral
//   J_m = 2 int_0^{pi/2} int_0^{(m/2)sec th} (phi - sin phi) e^{-(eta-m)/2} r dr dth
//       + 2 int_{pi/2}^{pi} int_0^{R}            "                "         r dr dth
// in polar coordinates about one endpoint, where eta is the distance sum and
// phi the exterior angle at the integration point. Adaptive Gauss-Kronrod in
// both variables; throws ToleranceNotMet if the error estimate cannot be
// brought below rel_tol * J.
EstimateReport jm_quadrature(double m, double rel_tol);

// Closed-form large-m asymptotic (8/3)(log m + gamma + 5/3), natural log.
double jm_asymptotic(double m);

// Probability that no process line separates x from both v1 and v2, i.e. that
// no line crosses both segments [v1,x] and [v2,x]:
//   exp(-(intensity/2) * (|v1-x| + |v2-x| - |v1-v2|)).
double prob_no_separating(Point v1, Point v2, Point x, double intensity);

}  // namespace netgeo
