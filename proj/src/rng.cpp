#include "netgeo/rng.hpp"

#include <cmath>

#include "netgeo/errors.hpp"

namespace netgeo {

namespace {
constexpr uint32_t kM0 = 0xD2511F53u;
constexpr uint32_t kM1 = 0xCD9E8D57u;
constexpr uint32_t kW0 = 0x9E3779B9u;
constexpr uint32_t kW1 = 0xBB67AE85u;
constexpr double kPi = 3.14159265358979323846;

inline void philox_round(std::array<uint32_t, 4>& c, const std::array<uint32_t, 2>& k) {
  uint64_t p0 = static_cast<uint64_t>(kM0) * c[0];
  uint64_t p1 = static_cast<uint64_t>(kM1) * c[2];
  uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
  uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}
}  // namespace

std::array<uint32_t, 4> Rng::block(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key) {
  std::array<uint32_t, 4> c = counter;
  std::array<uint32_t, 2> k = key;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kW0;
      k[1] += kW1;
    }
    philox_round(c, k);
  }
  return c;
}

void Rng::refill() {
  buf_ = block({static_cast<uint32_t>(block_), static_cast<uint32_t>(block_ >> 32),
                stream_lo_, stream_hi_},
               key_);
  ++block_;
  pos_ = 0;
}

uint64_t Rng::below(uint64_t n) {
  if (n == 0) throw InvalidArgument("below(0)");
  uint64_t limit = n * ((~uint64_t{0}) / n);
  uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % n;
}

namespace {

uint64_t poisson_inversion(Rng& rng, double mean) {
  // Knuth-style sequential search on the CDF; fine for mean < 10.
  double p = std::exp(-mean);
  double f = p;
  double u = rng.uniform();
  uint64_t k = 0;
  while (u > f && k < 200) {
    ++k;
    p *= mean / static_cast<double>(k);
    f += p;
  }
  return k;
}

uint64_t poisson_ptrs(Rng& rng, double mean) {
  // Hörmann (1993), "The transformed rejection method for generating Poisson
  // random variables", algorithm PTRS. Valid for mean >= 10.
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    double u = rng.uniform() - 0.5;
    double v = rng.uniform();
    double us = 0.5 - std::fabs(u);
    double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    double k = kf;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * loglam - mean - std::lgamma(k + 1.0)) {
      return static_cast<uint64_t>(kf);
    }
  }
}

}  // namespace

uint64_t sample_poisson(Rng& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw InvalidArgument("poisson mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  if (mean < 10.0) return poisson_inversion(rng, mean);
  return poisson_ptrs(rng, mean);
}

double sample_angle_sin(Rng& rng) {
  // F(a) = (1 - cos a)/2 on [0, pi]; invert.
  double a = std::acos(1.0 - 2.0 * rng.uniform());
  return a < kPi ? a : 0.0;
}

double sample_angle_cos(Rng& rng) {
  // Density |cos| on [0, pi): half the mass on [0, pi/2) with F = sin, half
  // mirrored onto (pi/2, pi).
  double u = rng.uniform();
  double a = (u < 0.5) ? std::asin(2.0 * u) : kPi - std::asin(2.0 - 2.0 * u);
  if (a >= kPi) a = 0.0;
  return a;
}

double sample_angle_mix(Rng& rng, double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0) || !(a + b > 0.0))
    throw InvalidArgument("angle mixture needs nonnegative weights, not both zero");
  // Component masses over [0, pi) are 2a and 2b, so the cos branch has
  // probability a / (a + b).
  return (rng.uniform() * (a + b) < a) ? sample_angle_cos(rng) : sample_angle_sin(rng);
}

}  // namespace netgeo
