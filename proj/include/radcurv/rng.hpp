#pragma once

#include <cstdint>

namespace radcurv {

// splitmix64: tiny, seedable, identical stream on every platform.
// constants are the canonical ones from Steele/Lea/Flood.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1) with 53 random bits
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0,n); modulo bias is irrelevant at our sizes and
  // keeps the stream layout trivial to reproduce
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

}  // namespace radcurv
