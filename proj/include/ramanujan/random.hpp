#pragma once

// Seeded streams. Draws go through these helpers instead of the
// <random> distributions so that output does not depend on the
// standard library implementation.

#include <cstdint>
#include <random>

namespace ramanujan {

using Rng = std::mt19937_64;

/// Independent stream for (seed, worker).
inline Rng make_stream(std::uint64_t seed, std::uint64_t worker = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(worker), static_cast<std::uint32_t>(worker >> 32),
                    0x52414d41u};
  return Rng(seq);
}

/// Uniform integer in [0, n). n must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <class It>
void shuffle(It first, It last, Rng& rng) {
  for (auto n = last - first; n > 1; --n) {
    auto j = static_cast<decltype(n)>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    std::swap(first[n - 1], first[j]);
  }
}

}  // namespace ramanujan
