#include <algorithm>
#include <vector>

#include "ldi/simd/lcs_kernels.hpp"

namespace ldi::simd {

std::size_t lcs_length_scalar(std::u32string_view a, std::u32string_view b) {
  if (a.empty() || b.empty()) return 0;
  if (b.size() > a.size()) std::swap(a, b);
  std::vector<std::uint32_t> row(b.size() + 1, 0);
  std::size_t best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    // walk right to left so row[j] still holds the previous row's value
    for (std::size_t j = b.size(); j > 0; --j) {
      if (a[i] == b[j - 1]) {
        row[j] = row[j - 1] + 1;
        best = std::max<std::size_t>(best, row[j]);
      } else {
        row[j] = 0;
      }
    }
  }
  return best;
}

}  // namespace ldi::simd
