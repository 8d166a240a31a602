#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>

namespace ldi::simd {

// Longest run of set bits over a stream of match bitmasks (bit 0 first).
struct RunTracker {
  std::size_t current = 0;
  std::size_t best = 0;

  void feed(std::uint64_t word, unsigned nbits) {
    if (nbits == 0) return;
    const std::uint64_t full = nbits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nbits) - 1;
    word &= full;
    if (word == full) {
      current += nbits;
      best = std::max(best, current);
      return;
    }
    current += static_cast<std::size_t>(std::countr_one(word));
    best = std::max(best, current);
    std::size_t inner = 0;
    for (std::uint64_t x = word; x; x &= x >> 1) ++inner;
    best = std::max(best, inner);
    current = static_cast<std::size_t>(std::countl_one(word << (64 - nbits)));
  }
};

}  // namespace ldi::simd
