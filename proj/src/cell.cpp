#include "netgeo/cell.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "netgeo/parallel.hpp"
#include "netgeo/rng.hpp"

namespace netgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Convex polygon maintained as an intersection of half-planes. Each edge
// stores its supporting line so that new vertices are always computed as
// direct line/line intersections rather than chained interpolations; that
// keeps vertex coordinates accurate to ~1e-8 even when the polygon lives at
// scale 1e8 (important for the perimeter-excess estimator, whose signal is
// orders of magnitude below the perimeter itself).
struct HalfPlaneCell {
  struct EdgeLine {
    double nx, ny, c;  // supporting line {q : nx*q.x + ny*q.y = c}
    bool window;       // true when this is a clipping-window edge
  };

  std::vector<Point> verts;
  std::vector<EdgeLine> edges;  // edges[i] supports verts[i] -> verts[i+1]
  int window_edges = 0;

  void init_rect(const Rect& r, bool window_provenance) {
    verts = {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
    edges = {{0, -1, -r.y0, window_provenance},
             {1, 0, r.x1, window_provenance},
             {0, 1, r.y1, window_provenance},
             {-1, 0, -r.x0, window_provenance}};
    window_edges = window_provenance ? 4 : 0;
  }

  bool empty() const { return verts.size() < 3; }

  // Intersect with {q : s*(nx*q.x + ny*q.y - c) >= 0}, s in {-1, +1}.
  void clip(double nx, double ny, double c, int s, bool window_provenance,
            std::vector<double>& scratch) {
    const size_t n = verts.size();
    if (n < 3) return;
    scratch.resize(n);
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = -dmin;
    for (size_t i = 0; i < n; ++i) {
      double d = s * (nx * verts[i].x + ny * verts[i].y - c);
      scratch[i] = d;
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
    if (dmin >= 0.0) return;  // nothing cut
    if (dmax <= 0.0) {        // fully outside: empty polygon
      verts.clear();
      edges.clear();
      window_edges = 0;
      return;
    }

    std::vector<Point> nv;
    std::vector<EdgeLine> ne;
    nv.reserve(n + 2);
    ne.reserve(n + 2);
    const EdgeLine cut{nx, ny, c, window_provenance};
    auto cross_point = [&](size_t i, size_t j) -> Point {
      // Vertex on edge i crossing the cut line: solve the 2x2 system of edge
      // line i against the cut line; fall back to interpolation when nearly
      // parallel (can only happen for grazing cuts).
      const EdgeLine& e = edges[i];
      double det = e.nx * ny - e.ny * nx;
      if (std::fabs(det) > 1e-14) {
        return {(e.c * ny - c * e.ny) / det, (e.nx * c - nx * e.c) / det};
      }
      double t = scratch[i] / (scratch[i] - scratch[j]);
      return verts[i] + t * (verts[j] - verts[i]);
    };

    for (size_t i = 0; i < n; ++i) {
      size_t j = (i + 1 == n) ? 0 : i + 1;
      bool in_i = scratch[i] >= 0.0, in_j = scratch[j] >= 0.0;
      if (in_i) {
        nv.push_back(verts[i]);
        ne.push_back(edges[i]);
      }
      if (in_i != in_j) {
        Point p = cross_point(i, j);
        if (in_i) {
          nv.push_back(p);  // exiting: boundary continues along the cut line
          ne.push_back(cut);
        } else {
          nv.push_back(p);  // entering: boundary resumes along edge i
          ne.push_back(edges[i]);
        }
      }
    }
    verts.swap(nv);
    edges.swap(ne);
    window_edges = 0;
    for (const EdgeLine& e : edges) window_edges += e.window ? 1 : 0;
  }

  double perimeter() const {
    double sum = 0.0;
    for (size_t i = 0, n = verts.size(); i < n; ++i)
      sum += dist(verts[i], verts[(i + 1 == n) ? 0 : i + 1]);
    return sum;
  }

  Rect bbox() const {
    Rect r{verts[0].x, verts[0].y, verts[0].x, verts[0].y};
    for (const Point& v : verts) {
      r.x0 = std::min(r.x0, v.x);
      r.x1 = std::max(r.x1, v.x);
      r.y0 = std::min(r.y0, v.y);
      r.y1 = std::max(r.y1, v.y);
    }
    return r;
  }

  // Quick reject: does the line {n.q = c} meet the current bounding box?
  bool line_meets_bbox(double nx, double ny, double c, const Rect& bb) const {
    double cx = 0.5 * (bb.x0 + bb.x1), cy = 0.5 * (bb.y0 + bb.y1);
    double ext = 0.5 * (bb.x1 - bb.x0) * std::fabs(nx) +
                 0.5 * (bb.y1 - bb.y0) * std::fabs(ny);
    double mid = nx * cx + ny * cy;
    return c >= mid - ext && c <= mid + ext;
  }
};

}  // namespace

double perimeter(const ConvexCell& cell) {
  if (cell.vertices.size() < 3) throw DegenerateCell();
  double sum = 0.0;
  for (size_t i = 0, n = cell.vertices.size(); i < n; ++i)
    sum += dist(cell.vertices[i], cell.vertices[(i + 1 == n) ? 0 : i + 1]);
  return sum;
}

ConvexCell two_point_cell(std::span<const Line> lines, Point v1, Point v2,
                          const Rect& window) {
  window.validate();
  if (!window.strictly_contains(v1) || !window.strictly_contains(v2))
    throw PointsOutsideWindow();
  HalfPlaneCell cell;
  cell.init_rect(window, /*window_provenance=*/true);
  std::vector<double> scratch;
  for (const Line& l : lines) {
    int s1 = side_of(l, v1);
    int s2 = side_of(l, v2);
    if (s1 * s2 < 0) continue;  // separating: deleted from the arrangement
    int keep = s1 != 0 ? s1 : s2;
    if (keep == 0) continue;  // through both points: no constraint
    cell.clip(std::cos(l.angle), std::sin(l.angle), l.offset, keep,
              /*window_provenance=*/false, scratch);
  }
  ConvexCell out;
  out.vertices = cell.verts;
  out.closed = !cell.empty() && cell.window_edges == 0;
  return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo estimator.

namespace {

// One replicate: grow the two-point cell at separation m (endpoints at
// (-m/2,0) and (m/2,0)) from tube-conditioned line samples, widening until it
// closes strictly inside the sampled region. Returns perimeter - 2m.
double mc_replicate(double m, double intensity, uint64_t seed, uint64_t stream) {
  const double w0 = std::max(10.0 / intensity, 0.01 * m);
  const int kMaxDoublings = 16;
  const double w_max = std::ldexp(w0, kMaxDoublings);

  Rng rng(seed, stream);
  HalfPlaneCell cell;
  // The enclosing box is wider than any tube we may reach; its edges carry
  // window provenance, so "closed" == no box edge survives.
  cell.init_rect(Rect{-0.5 * m - 2.0 * w_max, -2.0 * w_max, 0.5 * m + 2.0 * w_max,
                      2.0 * w_max},
                 /*window_provenance=*/true);
  std::vector<double> scratch;

  double lo = 0.0, hi = w0;
  for (;;) {
    Rect bb = cell.bbox();
    for_each_tube_annulus_line(m, lo, hi, intensity, rng, [&](const LineNc& l) {
      if (!cell.line_meets_bbox(l.nx, l.ny, l.c, bb)) return;
      // Keep the side containing the segment midpoint (the origin): the line
      // never passes through it because its offset magnitude is positive.
      int keep = l.c > 0.0 ? -1 : 1;
      size_t before = cell.verts.size();
      cell.clip(l.nx, l.ny, l.c, keep, false, scratch);
      if (cell.verts.size() != before) bb = cell.bbox();
    });
    if (cell.empty()) throw Error("two-point cell collapsed; numerical failure");
    if (cell.window_edges == 0) {
      Rect bb2 = cell.bbox();
      bool inside_tube = bb2.x0 > -0.5 * m - hi && bb2.x1 < 0.5 * m + hi &&
                         bb2.y0 > -hi && bb2.y1 < hi;
      if (inside_tube) break;
    }
    lo = hi;
    hi *= 2.0;
    if (hi > w_max * (1.0 + 1e-9)) throw NonConvergentWidening();
  }

  double perim = cell.perimeter();
  if (!(perim >= 2.0 * m * (1.0 - 1e-12)))
    throw Error("cell perimeter below twice the separation; numerical failure");
  return perim - 2.0 * m;
}

}  // namespace

EstimateReport estimate_jm_mc(double m, double intensity, int64_t replicates,
                              uint64_t seed) {
  if (!(m > 0.0) || !std::isfinite(m)) throw InvalidArgument("m must be > 0");
  if (!(intensity > 0.0) || !std::isfinite(intensity))
    throw InvalidArgument("intensity must be > 0");
  if (replicates < 2) throw InvalidArgument("need at least 2 replicates");

  std::vector<double> excess(static_cast<size_t>(replicates));
  parallel_for(replicates, [&](int64_t r) {
    excess[static_cast<size_t>(r)] =
        mc_replicate(m, intensity, seed, static_cast<uint64_t>(r));
  });

  double mean = 0.0;
  for (double e : excess) mean += e;
  mean /= static_cast<double>(replicates);
  double ss = 0.0;
  for (double e : excess) ss += (e - mean) * (e - mean);
  double sd = std::sqrt(ss / static_cast<double>(replicates - 1));

  EstimateReport rep;
  rep.value = mean;
  rep.std_error = sd / std::sqrt(static_cast<double>(replicates));
  rep.replicates = replicates;
  rep.seed = seed;
  rep.meta = "mc-tube-conditioned";
  return rep;
}

// ---------------------------------------------------------------------------
// Quadrature.

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK dqk15).
struct GkResult {
  double integral;
  double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  static const double xgk[8] = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static const double wgk[8] = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static const double wg[4] = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fc = f(mid);
  double result_k = wgk[7] * fc;
  double result_g = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    double dx = half * xgk[j];
    double f1 = f(mid - dx);
    double f2 = f(mid + dx);
    result_k += wgk[j] * (f1 + f2);
    if (j % 2 == 1) result_g += wg[j / 2] * (f1 + f2);
  }
  double integral = result_k * half;
  double err = std::fabs((result_k - result_g) * half);
  // QUADPACK-style error sharpening is unnecessary here; the raw difference
  // is a safe (over-)estimate for our smooth integrands.
  return {integral, err};
}

struct AdaptiveResult {
  double integral = 0.0;
  double error = 0.0;
  bool converged = true;
};

// Globally adaptive bisection; abs_tol is distributed over subintervals.
void integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int depth,
                        AdaptiveResult& out) {
  GkResult g = gk15(f, a, b);
  if (g.error <= std::max(abs_tol, rel_tol * std::fabs(g.integral)) || depth >= 60) {
    out.integral += g.integral;
    out.error += g.error;
    if (g.error > std::max(abs_tol, rel_tol * std::fabs(g.integral)))
      out.converged = false;
    return;
  }
  double mid = 0.5 * (a + b);
  integrate_adaptive(f, a, mid, 0.5 * abs_tol, rel_tol, depth + 1, out);
  integrate_adaptive(f, mid, b, 0.5 * abs_tol, rel_tol, depth + 1, out);
}

// phi - sin(phi), series-protected against cancellation for small phi.
double phi_minus_sin(double phi) {
  if (phi < 1e-3) {
    double p2 = phi * phi;
    return (phi * p2 / 6.0) *
           (1.0 - p2 / 20.0 * (1.0 - p2 / 42.0 * (1.0 - p2 / 72.0)));
  }
  return phi - std::sin(phi);
}

// Inner integrand of the J_m double integral at polar coordinates (r, theta)
// about the endpoint (m/2, 0), theta measured from the direction toward the
// other endpoint. eta - m is evaluated in a cancellation-free form.
double jm_inner(double m, double theta, double r, double cos_th, double sin_th) {
  double di = std::hypot(m - r * cos_th, r * sin_th);
  double eta_minus_m = r + (r * r - 2.0 * m * r * cos_th) / (di + m);
  double psi = std::atan2(r * sin_th, m - r * cos_th);
  double phi = theta + psi;
  return phi_minus_sin(phi) * std::exp(-0.5 * eta_minus_m) * r;
}

}  // namespace

double jm_asymptotic(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) throw InvalidArgument("m must be > 0");
  return (8.0 / 3.0) * (std::log(m) + kEulerGamma + 5.0 / 3.0);
}

EstimateReport jm_quadrature(double m, double rel_tol) {
  if (!(m > 0.0) || !std::isfinite(m)) throw InvalidArgument("m must be > 0");
  if (!(rel_tol > 0.0) || !(rel_tol < 0.1))
    throw InvalidArgument("rel_tol must lie in (0, 0.1)");

  // Scale target by a rough magnitude of the answer (the asymptotic for large
  // m, a floor of 1 otherwise).
  const double j_scale = std::max(1.0, jm_asymptotic(std::max(m, 3.0)));
  const double target = rel_tol * j_scale;
  const double inner_abs = 1e-3 * target / kPi;
  const double inner_rel = std::max(1e-13, 1e-3 * rel_tol);

  bool converged = true;

  auto outer_integrand = [&](double theta, bool region_a) -> double {
    double cos_th = std::cos(theta), sin_th = std::sin(theta);
    double rho = 0.5 * (1.0 - cos_th);  // eta - m >= 2*rho*r in both regions
    double r_hi;
    if (region_a) {
      r_hi = 0.5 * m / std::max(cos_th, 1e-300);
      if (rho > 1e-12) {
        double r_tail = (80.0 + 4.0 * std::log1p(1.0 / rho)) / rho;
        r_hi = std::min(r_hi, r_tail);
      }
    } else {
      r_hi = 80.0;  // integrand < pi * r * exp(-r/2) here; tail < 1e-14
    }
    if (!(r_hi > 0.0)) return 0.0;
    AdaptiveResult inner;
    integrate_adaptive(
        [&](double r) { return jm_inner(m, theta, r, cos_th, sin_th); }, 0.0,
        r_hi, inner_abs, inner_rel, 0, inner);
    if (!inner.converged) converged = false;
    return inner.integral;
  };

  // Region A (theta < pi/2) carries the log(m) ridge concentrated near
  // theta ~ m^{-1/2}; splitting at m^{-1/3} gives the adaptive rule a head
  // start without committing to the ridge location.
  const double theta_split = std::min(0.5 * kPi, std::pow(m, -1.0 / 3.0));
  AdaptiveResult outer;
  integrate_adaptive([&](double th) { return outer_integrand(th, true); }, 0.0,
                     theta_split, 0.2 * target, 0.25 * rel_tol, 0, outer);
  integrate_adaptive([&](double th) { return outer_integrand(th, true); },
                     theta_split, 0.5 * kPi, 0.2 * target, 0.25 * rel_tol, 0, outer);
  integrate_adaptive([&](double th) { return outer_integrand(th, false); },
                     0.5 * kPi, kPi, 0.1 * target, 0.25 * rel_tol, 0, outer);

  double value = 2.0 * outer.integral;
  // Outer rule error plus the worst case of inner errors integrated over theta.
  double err_est =
      2.0 * (outer.error + kPi * inner_abs + inner_rel * std::fabs(outer.integral));
  if (!outer.converged || !converged || !(err_est <= target))
    throw ToleranceNotMet("quadrature error estimate " + std::to_string(err_est) +
                          " exceeds target " + std::to_string(target));

  EstimateReport rep;
  rep.value = value;
  rep.abs_tolerance = err_est;
  rep.replicates = 0;
  rep.seed = 0;
  rep.meta = "adaptive-gauss-kronrod";
  return rep;
}

double prob_no_separating(Point v1, Point v2, Point x, double intensity) {
  if (!(intensity >= 0.0) || !std::isfinite(intensity))
    throw InvalidArgument("intensity must be finite and >= 0");
  double eta = dist(v1, x) + dist(v2, x);
  double m = dist(v1, v2);
  double excess = std::max(0.0, eta - m);  // triangle inequality, clamp fp dust
  return std::exp(-0.5 * intensity * excess);
}

}  // namespace netgeo
