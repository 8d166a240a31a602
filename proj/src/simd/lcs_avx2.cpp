#include <algorithm>

#include <immintrin.h>

#include "ldi/simd/lcs_kernels.hpp"
#include "ldi/simd/run_tracker.hpp"

namespace ldi::simd {
namespace {

// Longest run of equal positions along one diagonal of length len.
std::size_t diagonal_run(const char32_t* a, const char32_t* b, std::size_t len) {
  RunTracker runs;
  std::size_t k = 0;
  while (k + 8 <= len) {
    std::uint64_t word = 0;
    unsigned bits = 0;
    for (; bits < 64 && k + 8 <= len; bits += 8, k += 8) {
      const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + k));
      const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + k));
      const __m256i eq = _mm256_cmpeq_epi32(va, vb);
      const auto mask = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)));
      word |= static_cast<std::uint64_t>(mask) << bits;
    }
    runs.feed(word, bits);
  }
  std::uint64_t tail = 0;
  const auto rest = static_cast<unsigned>(len - k);
  for (unsigned t = 0; t < rest; ++t) {
    tail |= static_cast<std::uint64_t>(a[k + t] == b[k + t]) << t;
  }
  runs.feed(tail, rest);
  return runs.best;
}

}  // namespace

std::size_t lcs_length_avx2(std::u32string_view a, std::u32string_view b) {
  if (a.empty() || b.empty()) return 0;
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  std::size_t best = 0;
  // Diagonal offsets ordered longest-first so short diagonals can be skipped
  // once they cannot beat the current best.
  // offsets run from -(na - 1) to nb - 1; the walk below reaches both ends
  // within 2 * max(na, nb) steps
  const std::size_t steps = 2 * std::max(na, nb);
  for (std::size_t step = 0; step < steps; ++step) {
    // alternate around the main diagonal: 0, +1, -1, +2, -2, ...
    std::ptrdiff_t offset = (step % 2 == 0) ? -static_cast<std::ptrdiff_t>(step / 2)
                                            : static_cast<std::ptrdiff_t>(step / 2 + 1);
    if (offset <= -static_cast<std::ptrdiff_t>(na) || offset >= static_cast<std::ptrdiff_t>(nb)) {
      continue;
    }
    const std::size_t i0 = offset < 0 ? static_cast<std::size_t>(-offset) : 0;
    const std::size_t j0 = offset < 0 ? 0 : static_cast<std::size_t>(offset);
    const std::size_t len = std::min(na - i0, nb - j0);
    if (len <= best) continue;
    best = std::max(best, diagonal_run(a.data() + i0, b.data() + j0, len));
  }
  return best;
}

}  // namespace ldi::simd
