#pragma once

#include <cstdint>

namespace mstd {

// Fixed-increment 64-bit generator with a strong finalizer (splitmix64).
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t state) : state_(state) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return double(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

inline uint64_t mix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based substream for trial `index` under `seed`. Stream starts are
// spaced 2^30 generator steps apart, so any two streams that each draw fewer
// than 2^30 values (and whose indices differ by less than 2^33) never share a
// state. Results depend only on (seed, index), never on scheduling.
inline SplitMix64 substream(uint64_t seed, uint64_t index) {
  constexpr uint64_t kSpacing = 0x9E3779B97F4A7C15ULL << 30;
  return SplitMix64(mix64(seed) + index * kSpacing);
}

}  // namespace mstd
