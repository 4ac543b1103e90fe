#pragma once

#include <array>
#include <cstdint>

namespace netgeo {

// Counter-based generator: Philox4x32-10 (Salmon et al., "Parallel Random
// Numbers: As Easy as 1, 2, 3"). key = 64-bit seed, counter high lanes = 64-bit
// stream id, low lanes = block index. Any (seed, stream) pair yields an
// independent, reproducible sequence, which is what lets Monte Carlo replicates
// run in parallel while staying bit-identical to a serial run.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0)
      : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
        stream_lo_(static_cast<uint32_t>(stream)),
        stream_hi_(static_cast<uint32_t>(stream >> 32)) {}

  uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }
  uint64_t next_u64() {
    uint64_t lo = next_u32();
    return lo | (static_cast<uint64_t>(next_u32()) << 32);
  }
  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  // Unbiased integer in [0, n), n >= 1 (rejection on the top range).
  uint64_t below(uint64_t n);

  // Raw one-block evaluation, exposed for known-answer tests.
  static std::array<uint32_t, 4> block(const std::array<uint32_t, 4>& counter,
                                       const std::array<uint32_t, 2>& key);

 private:
  void refill();

  std::array<uint32_t, 2> key_;
  uint32_t stream_lo_, stream_hi_;
  uint64_t block_ = 0;
  std::array<uint32_t, 4> buf_{};
  int pos_ = 4;
};

// Poisson sample with the given mean: sequential inversion below mean 10,
// Hörmann's PTRS transformed rejection above. Both are exact; neither touches
// std::poisson_distribution (implementation-defined, would break cross-platform
// reproducibility).
uint64_t sample_poisson(Rng& rng, double mean);

// Angle in [0, pi) with density proportional to |sin|, via inversion.
double sample_angle_sin(Rng& rng);
// Angle in [0, pi) with density proportional to |cos|, via inversion.
double sample_angle_cos(Rng& rng);
// Angle in [0, pi) with density proportional to a*|cos| + b*|sin| (a, b >= 0).
double sample_angle_mix(Rng& rng, double a, double b);

}  // namespace netgeo
