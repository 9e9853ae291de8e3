#pragma once

#include <cstdint>

namespace eigendist {

/// splitmix64. Used both as a standalone generator and to derive
/// per-sample streams from (seed, counter) so parallel sampling is
/// deterministic and platform independent. std:: distributions are
/// deliberately avoided: their output is not pinned by the standard.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline SplitMix64 derived_rng(uint64_t seed, uint64_t counter) {
  SplitMix64 mix(seed);
  uint64_t a = mix.next();
  uint64_t b = mix.next();
  return SplitMix64(a ^ (counter * 0xd1342543de82ef95ULL + b));
}

}  // namespace eigendist
