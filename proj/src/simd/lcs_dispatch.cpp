#include <atomic>

#include "ldi/errors.hpp"
#include "ldi/simd/lcs_kernels.hpp"

namespace ldi::simd {
namespace {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(LDI_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(LDI_HAVE_NEON_TU)
      return true;  // mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

Isa detect_best() {
  if (cpu_supports(Isa::kAvx2)) return Isa::kAvx2;
  if (cpu_supports(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect_best()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
    if (cpu_supports(isa)) out.push_back(isa);
  }
  return out;
}

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

LcsLengthFn kernel_for(Isa isa) {
  switch (isa) {
#if defined(LDI_HAVE_AVX2_TU)
    case Isa::kAvx2:
      return &lcs_length_avx2;
#endif
#if defined(LDI_HAVE_NEON_TU)
    case Isa::kNeon:
      return &lcs_length_neon;
#endif
    default:
      return &lcs_length_scalar;
  }
}

void force_isa(std::optional<Isa> isa) {
  if (isa && !cpu_supports(*isa)) {
    throw InvalidArgument(std::string("LCS kernel not available: ") + isa_name(*isa));
  }
  selected().store(isa ? *isa : detect_best(), std::memory_order_relaxed);
}

std::size_t lcs_length(std::u32string_view a, std::u32string_view b) {
  return kernel_for(active_isa())(a, b);
}

}  // namespace ldi::simd
