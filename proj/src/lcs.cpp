#include "ldi/lcs.hpp"

#include <algorithm>

#include "ldi/simd/lcs_kernels.hpp"
#include "ldi/unicode.hpp"

namespace ldi {

LcsMatch longest_common_substring(std::u32string_view a, std::u32string_view b) {
  LcsMatch best;
  if (a.empty() || b.empty()) return best;
  // Row-major scan with a strict improvement test: for a fixed length the
  // first run found ends (and so starts) earliest in a, then in b.
  std::vector<std::uint32_t> row(b.size() + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint32_t diag = 0;  // previous row, column j-1
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::uint32_t up_left = diag;
      diag = row[j + 1];
      if (a[i] == b[j]) {
        row[j + 1] = up_left + 1;
        if (row[j + 1] > best.length) {
          best.length = row[j + 1];
          best.pos_a = i + 1 - best.length;
          best.pos_b = j + 1 - best.length;
        }
      } else {
        row[j + 1] = 0;
      }
    }
  }
  return best;
}

std::string longest_common_substring(std::string_view a, std::string_view b) {
  const auto ua = utf8_decode(a);
  const auto ub = utf8_decode(b);
  const auto m = longest_common_substring(std::u32string_view(ua), std::u32string_view(ub));
  return utf8_encode(std::u32string_view(ua).substr(m.pos_a, m.length));
}

std::size_t lcs_length(std::u32string_view a, std::u32string_view b) {
  return simd::lcs_length(a, b);
}

LcsQueryIndex::LcsQueryIndex(std::u32string query) : query_(std::move(query)) {
  if (query_.size() >= kAutomatonMinLength) build_automaton();
}

std::int32_t LcsQueryIndex::transition(std::int32_t state, char32_t ch) const {
  for (const auto& [c, target] : states_[state].next) {
    if (c == ch) return target;
  }
  return -1;
}

void LcsQueryIndex::build_automaton() {
  states_.reserve(2 * query_.size() + 1);
  states_.push_back(State{});
  std::int32_t last = 0;
  for (char32_t ch : query_) {
    const auto cur = static_cast<std::int32_t>(states_.size());
    states_.push_back(State{states_[last].length + 1, -1, {}});
    std::int32_t p = last;
    while (p != -1 && transition(p, ch) == -1) {
      states_[p].next.emplace_back(ch, cur);
      p = states_[p].link;
    }
    if (p == -1) {
      states_[cur].link = 0;
    } else {
      const std::int32_t q = transition(p, ch);
      if (states_[p].length + 1 == states_[q].length) {
        states_[cur].link = q;
      } else {
        const auto clone = static_cast<std::int32_t>(states_.size());
        State copy = states_[q];
        copy.length = states_[p].length + 1;
        states_.push_back(std::move(copy));
        while (p != -1) {
          auto it = std::find_if(states_[p].next.begin(), states_[p].next.end(),
                                 [&](const auto& e) { return e.first == ch; });
          if (it == states_[p].next.end() || it->second != q) break;
          it->second = clone;
          p = states_[p].link;
        }
        states_[q].link = clone;
        states_[cur].link = clone;
      }
    }
    last = cur;
  }
}

std::size_t LcsQueryIndex::length_with(std::u32string_view other) const {
  if (!uses_automaton()) return simd::lcs_length(query_, other);
  std::int32_t state = 0;
  std::int32_t matched = 0;
  std::int32_t best = 0;
  for (char32_t ch : other) {
    while (state != 0 && transition(state, ch) == -1) {
      state = states_[state].link;
      matched = states_[state].length;
    }
    const std::int32_t next = transition(state, ch);
    if (next != -1) {
      state = next;
      ++matched;
    }
    best = std::max(best, matched);
  }
  return static_cast<std::size_t>(best);
}

}  // namespace ldi
