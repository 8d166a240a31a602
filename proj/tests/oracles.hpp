#pragma once
// Brute-force references and fixture generators shared by the unit tests and
// the acceptance binary. Nothing here calls into the code under test except
// for container types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ldi/table.hpp"

namespace oracle {

// smallest integer c with c >= fraction * n, computed by counting
inline std::size_t min_count(double fraction, std::size_t n) {
  for (std::size_t c = 0; c <= n; ++c) {
    if (static_cast<double>(c) >= fraction * static_cast<double>(n) - 1e-9) return c;
  }
  return n;
}

// every distinct substring of every doc, counted once per doc
template <typename Str>
std::map<Str, std::size_t> substring_doc_counts(const std::vector<Str>& docs) {
  std::map<Str, std::size_t> counts;
  for (const auto& d : docs) {
    std::set<Str> seen;
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (std::size_t len = 1; i + len <= d.size(); ++len) seen.insert(d.substr(i, len));
    }
    for (const auto& s : seen) ++counts[s];
  }
  return counts;
}

template <typename Str>
std::map<Str, std::size_t> frequent(const std::vector<Str>& docs, double q) {
  const std::size_t need = std::max<std::size_t>(1, min_count(q, docs.size()));
  std::map<Str, std::size_t> out;
  for (const auto& [s, c] : substring_doc_counts(docs)) {
    if (c >= need) out.emplace(s, c);
  }
  return out;
}

struct Lcs {
  std::size_t length = 0, pos_a = 0, pos_b = 0;
};

// tries every pair of start positions in (a, b) order; first longest wins
template <typename Str>
Lcs lcs(const Str& a, const Str& b) {
  Lcs best;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::size_t len = 0;
      while (i + len < a.size() && j + len < b.size() && a[i + len] == b[j + len]) ++len;
      if (len > best.length) best = {len, i, j};
    }
  }
  return best;
}

// textbook (n+1) x (m+1) suffix-match table
template <typename Str>
std::size_t dp_lcs_length(const Str& a, const Str& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  std::size_t best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      if (a[i - 1] == b[j - 1]) t[i][j] = t[i - 1][j - 1] + 1;
      best = std::max(best, t[i][j]);
    }
  }
  return best;
}

inline double attribute_ratio(const std::u32string& x, const std::u32string& y) {
  if (x.empty() && y.empty()) return 1.0;
  if (x.empty() || y.empty()) return 0.0;
  return static_cast<double>(lcs(x, y).length) / static_cast<double>(std::max(x.size(), y.size()));
}

inline std::u32string to_u32(const std::string& ascii) { return std::u32string(ascii.begin(), ascii.end()); }

// ASCII-only tables: the similarity is computed on bytes
inline double similarity(const ldi::Table& t, std::size_t i, std::size_t j,
                         const std::vector<std::string>& attrs) {
  double sum = 0.0;
  for (const auto& a : attrs) {
    sum += attribute_ratio(to_u32(t.cell(i, a).value_or("")), to_u32(t.cell(j, a).value_or("")));
  }
  return sum / static_cast<double>(attrs.size());
}

// rank by score desc then row asc; one row per target value; then fill;
// the result is listed in rank order
inline std::vector<std::size_t> diverse_selection(const ldi::Table& t, std::size_t query,
                                                  const std::vector<std::string>& attrs,
                                                  const std::string& target, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t r = 0; r < t.num_rows(); ++r) {
    if (r == query || !t.cell(r, target)) continue;
    ranked.emplace_back(similarity(t, query, r, attrs), r);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  });
  std::size_t picked_count = 0;
  std::set<std::string> seen;
  std::vector<bool> used(ranked.size(), false);
  for (std::size_t i = 0; i < ranked.size() && picked_count < k; ++i) {
    if (seen.insert(*t.cell(ranked[i].second, target)).second) {
      ++picked_count;
      used[i] = true;
    }
  }
  for (std::size_t i = 0; i < ranked.size() && picked_count < k; ++i) {
    if (!used[i]) {
      ++picked_count;
      used[i] = true;
    }
  }
  // present in rank order
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (used[i]) out.push_back(ranked[i].second);
  }
  return out;
}

inline std::string random_string(std::mt19937_64& rng, std::size_t len, std::string_view alphabet) {
  std::string s(len, ' ');
  for (auto& c : s) c = alphabet[rng() % alphabet.size()];
  return s;
}

// Grouped table with target "T" and candidates C0..C{cols-1}. Each candidate
// plants a group-specific token in a random share of the rows of a random
// share of groups, on top of a shared background alphabet.
inline ldi::Table grouped_fixture(std::mt19937_64& rng, std::size_t groups, std::size_t rows_per_group,
                                  std::size_t cols) {
  std::vector<std::string> schema{"T"};
  for (std::size_t c = 0; c < cols; ++c) schema.push_back("C" + std::to_string(c));
  std::vector<std::vector<double>> plant_rate(cols, std::vector<double>(groups));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto& col : plant_rate) {
    const double strength = unit(rng);
    for (auto& g : col) g = unit(rng) < strength ? 0.5 + 0.5 * unit(rng) : 0.0;
  }
  std::vector<std::vector<ldi::Cell>> rows;
  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t r = 0; r < rows_per_group; ++r) {
      std::vector<ldi::Cell> row{"g" + std::to_string(g)};
      for (std::size_t c = 0; c < cols; ++c) {
        std::string v = random_string(rng, 1 + rng() % 5, "xyz");
        if (unit(rng) < plant_rate[c][g]) {
          v.insert(rng() % (v.size() + 1), std::string(1, static_cast<char>('A' + g)) + "#");
        }
        if (rng() % 25 == 0) {
          row.emplace_back(std::nullopt);
        } else {
          row.emplace_back(std::move(v));
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return ldi::Table::from_rows(std::move(schema), rows);
}

}  // namespace oracle
