#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace codeprov {

/// Uniform integer in [0, bound) by rejection; unlike the standard
/// distributions its output is identical across standard libraries.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - bound + 1) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= limit) return x % bound;
  }
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Fisher-Yates shuffle, reproducible for a given seed.
template <typename T>
void seeded_shuffle(std::vector<T>& items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = bounded(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace codeprov
