#pragma once

#include <cstdint>

#include "jetlab/rational.hpp"

namespace jetlab {

/// Deterministic 64-bit generator (splitmix64). Used for every seeded
/// sampling path so that identical seeds give identical documents on any
/// platform; std:: distributions are implementation-defined and avoided.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi], inclusive.
  long next_int(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  /// Integer in [-9, 9] mapped to an exact rational.
  Rational next_small_rational() { return rat(next_int(-9, 9)); }

  /// Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace jetlab
