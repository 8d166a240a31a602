#include <algorithm>

#include <arm_neon.h>

#include "ldi/simd/lcs_kernels.hpp"
#include "ldi/simd/run_tracker.hpp"

namespace ldi::simd {
namespace {

std::size_t diagonal_run(const char32_t* a, const char32_t* b, std::size_t len) {
  static const std::uint32_t kLaneBits[4] = {1, 2, 4, 8};
  const uint32x4_t lane_bits = vld1q_u32(kLaneBits);
  RunTracker runs;
  std::size_t k = 0;
  while (k + 4 <= len) {
    std::uint64_t word = 0;
    unsigned bits = 0;
    for (; bits < 64 && k + 4 <= len; bits += 4, k += 4) {
      const uint32x4_t va = vld1q_u32(reinterpret_cast<const std::uint32_t*>(a + k));
      const uint32x4_t vb = vld1q_u32(reinterpret_cast<const std::uint32_t*>(b + k));
      const uint32x4_t eq = vandq_u32(vceqq_u32(va, vb), lane_bits);
      word |= static_cast<std::uint64_t>(vaddvq_u32(eq)) << bits;
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

std::size_t lcs_length_neon(std::u32string_view a, std::u32string_view b) {
  if (a.empty() || b.empty()) return 0;
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  std::size_t best = 0;
  // offsets run from -(na - 1) to nb - 1; the walk below reaches both ends
  // within 2 * max(na, nb) steps
  const std::size_t steps = 2 * std::max(na, nb);
  for (std::size_t step = 0; step < steps; ++step) {
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
