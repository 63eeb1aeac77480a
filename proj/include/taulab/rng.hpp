#pragma once

#include <cstdint>

namespace taulab {

/// SplitMix64 (Vigna, public domain). Small, fast, and identical on every
/// platform, which keeps seeded sampling byte-reproducible.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Stream derived from (seed, task index). Streams for distinct indices are
/// independent of each other and of evaluation order.
inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 a(seed);
  SplitMix64 b(index ^ 0xD1B54A32D192ED03ULL);
  return SplitMix64(a.next() ^ (b.next() + 0x8CB92BA72F3D8DD7ULL));
}

}  // namespace taulab
