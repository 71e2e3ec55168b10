#pragma once

#include <cstdint>

namespace qdeg {

// splitmix64: platform-independent, so seeded runs are byte-identical
// everywhere. Not for cryptography, just reproducible search.
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi], inclusive.
  long range(long lo, long hi) {
    uint64_t span = uint64_t(hi - lo + 1);
    return lo + long(next() % span);
  }
};

// Stable seed derivation for independent sub-searches.
inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  return z ^ (z >> 31);
}

}  // namespace qdeg
