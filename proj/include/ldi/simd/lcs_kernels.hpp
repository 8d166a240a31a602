#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace ldi::simd {

enum class Isa { kScalar, kAvx2, kNeon };

/// Length of the longest common substring of a and b.
using LcsLengthFn = std::size_t (*)(std::u32string_view a, std::u32string_view b);

/// Reference kernel: rolling-row dynamic program, O(|a|*|b|) time.
std::size_t lcs_length_scalar(std::u32string_view a, std::u32string_view b);

#if defined(LDI_HAVE_AVX2_TU)
/// Compares whole diagonals eight code points at a time and tracks the
/// longest run of matches in the resulting bitmasks.
std::size_t lcs_length_avx2(std::u32string_view a, std::u32string_view b);
#endif
#if defined(LDI_HAVE_NEON_TU)
std::size_t lcs_length_neon(std::u32string_view a, std::u32string_view b);
#endif

const char* isa_name(Isa isa) noexcept;

/// Kernels compiled in and supported by the running CPU. Always includes scalar.
std::vector<Isa> available_isas();

/// Kernel chosen at startup (best available), unless overridden.
Isa active_isa();
LcsLengthFn kernel_for(Isa isa);

/// Pins dispatch to one kernel; std::nullopt restores automatic selection.
/// Throws InvalidArgument if the kernel is not available on this machine.
void force_isa(std::optional<Isa> isa);

/// Dispatched entry point.
std::size_t lcs_length(std::u32string_view a, std::u32string_view b);

}  // namespace ldi::simd
