#include "netgeo/lineproc.hpp"

#include <cmath>

namespace netgeo {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_intensity(double intensity) {
  if (!(intensity >= 0.0) || !std::isfinite(intensity))
    throw InvalidArgument("intensity must be finite and >= 0");
}
}  // namespace

double hitting_measure_disk(double radius, double intensity) {
  check_intensity(intensity);
  if (radius < 0.0) throw NegativeRadius();
  // (1/2) * int_0^pi int_{|p - c.n| <= r} dp dalpha = (1/2) * pi * 2r.
  return intensity * kPi * radius;
}

double hitting_measure_segment(double length, double intensity) {
  check_intensity(intensity);
  if (length < 0.0) throw NegativeLength();
  // (1/2) * int_0^pi length * |cos(alpha)| dalpha = length.
  return intensity * length;
}

double hitting_measure_rect(const Rect& r, double intensity) {
  check_intensity(intensity);
  r.validate();
  // Cauchy: mean width integrated over alpha equals the semiperimeter.
  return intensity * r.semiperimeter();
}

LineSample sample_disk(Point center, double radius, const LineProcessParams& params,
                       uint64_t stream) {
  check_intensity(params.intensity);
  if (radius < 0.0) throw NegativeRadius();
  Rng rng(params.seed, stream);
  LineSample out;
  out.params = params;
  out.window.kind = SampleWindow::Kind::Disk;
  out.window.center = center;
  out.window.radius = radius;
  uint64_t n = sample_poisson(rng, hitting_measure_disk(radius, params.intensity));
  out.lines.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    // A line hits the disk iff its offset lies within radius of the center's
    // projection onto the normal; alpha is uniform for an isotropic process.
    double alpha = rng.uniform(0.0, kPi);
    double proj = center.x * std::cos(alpha) + center.y * std::sin(alpha);
    double p = proj + rng.uniform(-radius, radius);
    out.lines.push_back(Line{p, alpha});
  }
  return out;
}

LineSample sample_rect(const Rect& r, const LineProcessParams& params, uint64_t stream) {
  check_intensity(params.intensity);
  r.validate();
  Rng rng(params.seed, stream);
  LineSample out;
  out.params = params;
  out.window.kind = SampleWindow::Kind::Rectangle;
  out.window.rect = r;
  const double w = r.width(), h = r.height();
  const Point c = r.center();
  uint64_t n = sample_poisson(rng, hitting_measure_rect(r, params.intensity));
  out.lines.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    // The width of the rectangle seen from direction alpha is
    // w|cos| + h|sin|, so alpha is drawn from that mixture and the offset
    // uniformly across the projected extent.
    double alpha = sample_angle_mix(rng, w, h);
    double ca = std::cos(alpha), sa = std::sin(alpha);
    double half_extent = 0.5 * (w * std::fabs(ca) + h * std::fabs(sa));
    double proj = c.x * ca + c.y * sa;
    double p = proj + rng.uniform(-half_extent, half_extent);
    out.lines.push_back(Line{p, alpha});
  }
  return out;
}

double tube_annulus_measure(double w_lo, double w_hi, double intensity) {
  check_intensity(intensity);
  if (!(w_hi >= w_lo) || w_lo < 0.0) throw InvalidArgument("bad tube widths");
  // For each alpha the non-separating offsets form two flanks of length
  // (|cos| + |sin|) * w beyond the segment's own projection; integrating
  // 2 * (|cos| + |sin|) * (w_hi - w_lo) against (intensity/2) dalpha gives
  // 4 * intensity * (w_hi - w_lo), independent of the separation.
  return 4.0 * intensity * (w_hi - w_lo);
}

Line LineNc::to_line() const { return Line::from_normal_offset(nx, ny, c); }

uint64_t for_each_tube_annulus_line(double separation, double w_lo, double w_hi,
                                    double intensity, Rng& rng,
                                    const std::function<void(const LineNc&)>& sink) {
  check_intensity(intensity);
  if (!(separation > 0.0)) throw DegenerateSegment("tube needs distinct endpoints");
  if (!(w_hi >= w_lo) || w_lo < 0.0) throw InvalidArgument("bad tube widths");
  const double m = separation;
  uint64_t n = sample_poisson(rng, tube_annulus_measure(w_lo, w_hi, intensity));
  for (uint64_t i = 0; i < n; ++i) {
    // Frame: endpoints at (-m/2, 0) and (m/2, 0). A line (p, alpha) separates
    // them iff |p| < (m/2)|cos alpha|; it hits the tube of width w iff
    // |p| <= (m/2)|cos| + w(|cos| + |sin|). Hence alpha has density
    // proportional to |cos| + |sin| and the offset magnitude sits uniformly in
    // the flank, shifted by the annulus lower bound. Both mixture components
    // invert to (cos, sin) pairs algebraically, keeping this loop trig-free.
    double ca, sa;
    if (rng.uniform() < 0.5) {
      // |cos| component.
      double u = rng.uniform();
      sa = (u < 0.5) ? 2.0 * u : 2.0 - 2.0 * u;
      ca = std::sqrt(std::max(0.0, 1.0 - sa * sa));
      if (u >= 0.5) ca = -ca;
    } else {
      // |sin| component.
      ca = 1.0 - 2.0 * rng.uniform();
      sa = std::sqrt(std::max(0.0, 1.0 - ca * ca));
    }
    double flank = std::fabs(ca) + sa;  // sa >= 0 by construction
    double u = w_lo + (w_hi - w_lo) * rng.uniform();
    double magnitude = 0.5 * m * std::fabs(ca) + u * flank;
    double p = (rng.uniform() < 0.5) ? magnitude : -magnitude;
    sink(LineNc{ca, sa, p});
  }
  return n;
}

LineSample sample_tube_nonseparating(Point v1, Point v2, double half_width,
                                     const LineProcessParams& params,
                                     uint64_t stream) {
  check_intensity(params.intensity);
  if (!(half_width >= 0.0)) throw InvalidArgument("half_width must be >= 0");
  const double m = dist(v1, v2);
  if (!(m > 0.0)) throw DegenerateSegment("tube needs distinct endpoints");
  Rng rng(params.seed, stream);
  LineSample out;
  out.params = params;
  out.window.kind = SampleWindow::Kind::Tube;
  out.window.v1 = v1;
  out.window.v2 = v2;
  out.window.half_width = half_width;
  out.window.center = Segment{v1, v2}.midpoint();
  // Rotation taking the local frame (segment along x-axis, midpoint at origin)
  // to world coordinates.
  const double cpsi = (v2.x - v1.x) / m, spsi = (v2.y - v1.y) / m;
  const Point mid = out.window.center;
  for_each_tube_annulus_line(m, 0.0, half_width, params.intensity, rng,
                             [&](const LineNc& local) {
    // Local normal (nx, ny); world normal is it rotated by psi, and the
    // offset gains the projection of the midpoint translation.
    double nx = cpsi * local.nx - spsi * local.ny;
    double ny = spsi * local.nx + cpsi * local.ny;
    double c = local.c + nx * mid.x + ny * mid.y;
    out.lines.push_back(Line::from_normal_offset(nx, ny, c));
  });
  return out;
}

std::vector<CrossingMark> intersection_angle_samples(const LineSample& a,
                                                     const LineSample& b) {
  std::vector<CrossingMark> marks;
  marks.reserve(a.lines.size() * b.lines.size() / 4 + 1);
  for (const Line& la : a.lines) {
    for (const Line& lb : b.lines) {
      auto pt = intersect_lines(la, lb);
      if (!pt) continue;
      double xi = std::fmod(la.angle - lb.angle, kPi);
      if (xi < 0.0) xi += kPi;
      marks.push_back(CrossingMark{*pt, xi});
    }
  }
  return marks;
}

}  // namespace netgeo
