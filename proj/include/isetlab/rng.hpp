#pragma once

#include <cstdint>

namespace isetlab {

// Deterministic pseudo-random stream, "isetlab-rng-v1":
// xoshiro256++ state expanded from a 64-bit seed via SplitMix64.
// Bounded draws use masked rejection and doubles take the top 53 bits,
// so identical seeds give bit-identical sequences on every platform.

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, bound); bound == 0 returns 0.
  uint64_t below(uint64_t bound) {
    if (bound <= 1) return 0;
    const int lz = __builtin_clzll(bound - 1);
    const uint64_t mask = ~0ULL >> lz;
    uint64_t r;
    do {
      r = next_u64() & mask;
    } while (r >= bound);
    return r;
  }

  // Uniform in [0,1), 53-bit resolution.
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Child stream, independent of the parent's future output.
  Rng split() { return Rng(next_u64() ^ 0x6a09e667f3bcc909ULL); }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

// Stable per-cell seed for sweeps: depends only on (base, index).
inline uint64_t derive_seed(uint64_t base, uint64_t index) {
  uint64_t st = base ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  uint64_t a = splitmix64(st);
  uint64_t b = splitmix64(st);
  return a ^ (b << 1);
}

}  // namespace isetlab
