#include <doctest.h>

#include <random>

#include "ldi/errors.hpp"
#include "ldi/simd/lcs_kernels.hpp"
#include "ldi/simd/run_tracker.hpp"
#include "oracles.hpp"

using ldi::simd::Isa;

namespace {

struct IsaGuard {
  ~IsaGuard() { ldi::simd::force_isa(std::nullopt); }
};

std::u32string random_u32(std::mt19937_64& rng, std::size_t len, std::uint32_t alphabet) {
  std::u32string s(len, U'\0');
  for (auto& c : s) c = static_cast<char32_t>(0x61 + rng() % alphabet);
  return s;
}

}  // namespace

TEST_CASE("simd: scalar kernel is always available") {
  const auto isas = ldi::simd::available_isas();
  REQUIRE_FALSE(isas.empty());
  CHECK(isas.front() == Isa::kScalar);
  MESSAGE("active kernel: " << std::string(ldi::simd::isa_name(ldi::simd::active_isa())));
}

TEST_CASE("simd: every available kernel equals the scalar reference") {
  std::mt19937_64 rng(2024);
  for (Isa isa : ldi::simd::available_isas()) {
    const std::string isa_label = ldi::simd::isa_name(isa);
    CAPTURE(isa_label);
    const auto kernel = ldi::simd::kernel_for(isa);
    for (int trial = 0; trial < 3000; ++trial) {
      const std::uint32_t alphabet = 1 + rng() % 4;
      const auto a = random_u32(rng, rng() % 70, alphabet);
      const auto b = random_u32(rng, rng() % 70, alphabet);
      REQUIRE(kernel(a, b) == ldi::simd::lcs_length_scalar(a, b));
    }
    // long runs cross several 64-bit mask words
    for (std::size_t len : {63ul, 64ul, 65ul, 130ul, 257ul, 600ul}) {
      const auto a = random_u32(rng, len, 1);
      const auto b = random_u32(rng, len + 3, 1);
      REQUIRE(kernel(a, b) == len);
      auto c = random_u32(rng, len, 3);
      auto d = c;
      d[len / 2] = U'#';
      REQUIRE(kernel(c, d) == ldi::simd::lcs_length_scalar(c, d));
    }
    // code points that differ only in high bits
    const std::u32string x{U'\U0001F600', U'a', U'\U0001F601'};
    const std::u32string y{U'\U0001F601', U'a', U'\U0001F600'};
    CHECK(kernel(x, y) == 1);
  }
}

TEST_CASE("simd: scalar reference matches the oracle") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = random_u32(rng, rng() % 15, 3);
    const auto b = random_u32(rng, rng() % 15, 3);
    REQUIRE(ldi::simd::lcs_length_scalar(a, b) == oracle::lcs(a, b).length);
  }
}

TEST_CASE("simd: forced dispatch") {
  IsaGuard guard;
  for (Isa isa : ldi::simd::available_isas()) {
    ldi::simd::force_isa(isa);
    CHECK(ldi::simd::active_isa() == isa);
    CHECK(ldi::simd::lcs_length(U"xxabcdyy", U"abcd") == 4);
  }
  const auto isas = ldi::simd::available_isas();
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    if (std::find(isas.begin(), isas.end(), isa) == isas.end()) {
      CHECK_THROWS_AS(ldi::simd::force_isa(isa), ldi::InvalidArgument);
    }
  }
}

TEST_CASE("RunTracker: longest run of set bits across words") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<bool> bits;
    ldi::simd::RunTracker tracker;
    for (int w = 0; w < 4; ++w) {
      const unsigned nbits = 1 + rng() % 64;
      std::uint64_t word = 0;
      const int mode = rng() % 3;
      for (unsigned i = 0; i < nbits; ++i) {
        const bool bit = mode == 0 ? true : (mode == 1 ? (rng() % 4 != 0) : (rng() % 2 == 0));
        if (bit) word |= std::uint64_t{1} << i;
        bits.push_back(bit);
      }
      tracker.feed(word, nbits);
    }
    std::size_t best = 0, run = 0;
    for (bool b : bits) {
      run = b ? run + 1 : 0;
      best = std::max(best, run);
    }
    REQUIRE(tracker.best == best);
  }
}
