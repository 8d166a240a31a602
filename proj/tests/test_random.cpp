#include <doctest.h>

#include <algorithm>
#include <set>

#include "ldi/random.hpp"

TEST_CASE("rng: below stays in range and is reproducible") {
  ldi::Rng a(3), b(3);
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.below(7);
    CHECK(x < 7);
    CHECK(x == b.below(7));
  }
}

TEST_CASE("rng: sample_indices draws distinct indices") {
  ldi::Rng rng(9);
  for (std::size_t n = 0; n < 40; ++n) {
    for (std::size_t k = 0; k <= n; k += 3) {
      const auto s = rng.sample_indices(n, k);
      CHECK(s.size() == k);
      CHECK(std::set<std::size_t>(s.begin(), s.end()).size() == k);
      CHECK(std::all_of(s.begin(), s.end(), [&](std::size_t i) { return i < n; }));
    }
  }
}

TEST_CASE("rng: below is roughly uniform") {
  ldi::Rng rng(1);
  std::vector<int> hist(5, 0);
  for (int i = 0; i < 50000; ++i) ++hist[rng.below(5)];
  for (int h : hist) CHECK(std::abs(h - 10000) < 500);
}

TEST_CASE("derive_seed separates streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 100; ++s) seen.insert(ldi::derive_seed(42, s));
  CHECK(seen.size() == 100);
  CHECK(ldi::derive_seed(42, 1) == ldi::derive_seed(42, 1));
  CHECK(ldi::derive_seed(42, 1) != ldi::derive_seed(43, 1));
}
