#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ldi {

struct LcsMatch {
  std::size_t pos_a = 0;
  std::size_t pos_b = 0;
  std::size_t length = 0;
  friend bool operator==(const LcsMatch&, const LcsMatch&) = default;
};

/// Longest contiguous substring common to a and b. Among equally long
/// candidates the one starting earliest in a wins, then earliest in b.
LcsMatch longest_common_substring(std::u32string_view a, std::u32string_view b);

/// UTF-8 convenience wrapper returning the substring itself ("" if none).
std::string longest_common_substring(std::string_view a, std::string_view b);

/// Length only, via the runtime-selected SIMD kernel.
std::size_t lcs_length(std::u32string_view a, std::u32string_view b);

/// Answers |LCS(query, x)| for many x against one fixed query. Long queries
/// get a suffix automaton so each lookup costs O(|x|); short ones go through
/// the SIMD diagonal kernel, which is faster at cell-sized lengths.
class LcsQueryIndex {
 public:
  static constexpr std::size_t kAutomatonMinLength = 128;

  explicit LcsQueryIndex(std::u32string query);

  const std::u32string& query() const noexcept { return query_; }
  bool uses_automaton() const noexcept { return !states_.empty(); }
  std::size_t length_with(std::u32string_view other) const;

 private:
  struct State {
    std::int32_t length = 0;
    std::int32_t link = -1;
    std::vector<std::pair<char32_t, std::int32_t>> next;
  };
  std::int32_t transition(std::int32_t state, char32_t ch) const;
  void build_automaton();

  std::u32string query_;
  std::vector<State> states_;
};

}  // namespace ldi
