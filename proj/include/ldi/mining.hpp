#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace ldi {

/// Ordered collection of documents with dense ids 0..n-1. Text is held as
/// Unicode scalar values; the substring universe is character-level.
class DocumentSet {
 public:
  DocumentSet() = default;
  explicit DocumentSet(std::vector<std::u32string> docs);
  static DocumentSet from_utf8(std::span<const std::string> docs);

  std::size_t size() const noexcept { return docs_.size(); }
  std::size_t max_length() const noexcept { return max_length_; }
  std::size_t total_length() const noexcept { return total_length_; }
  const std::u32string& operator[](std::size_t i) const { return docs_[i]; }
  std::span<const std::u32string> docs() const noexcept { return docs_; }

 private:
  std::vector<std::u32string> docs_;
  std::size_t max_length_ = 0;
  std::size_t total_length_ = 0;
};

struct MiningStats {
  std::size_t nodes_built = 0;
  std::size_t substrings_reported = 0;
  std::chrono::nanoseconds wall_time{0};
  std::size_t peak_string_bytes = 0;
  std::optional<std::size_t> max_substring_length;

  std::string to_json() const;
};

/// Substrings with the number of distinct documents containing each.
struct FrequentSubstringSet {
  std::map<std::string, std::size_t> entries;
  std::size_t threshold = 0;
  MiningStats stats;

  bool contains(const std::string& s) const { return entries.count(s) != 0; }
  std::size_t size() const noexcept { return entries.size(); }
};

struct MiningOptions {
  /// Report only substrings up to this many characters.
  std::optional<std::size_t> max_substring_length;
};

/// ceil(fraction * count), robust to floating-point noise such as
/// 0.7 * 10 == 7.000000000000001.
std::size_t ceil_fraction(double fraction, std::size_t count);

/// All substrings s with |s| >= 1 contained in at least ceil(q * n) distinct
/// documents. Built on a generalized suffix tree whose nodes are annotated
/// with distinct-document counts via small-to-large set merging.
FrequentSubstringSet frequent_substrings(const DocumentSet& docs, double q,
                                         const MiningOptions& options = {});

/// For each group, the substrings that are frequent there and in no other
/// group, using a substring -> owning-groups hash map.
std::vector<std::set<std::string>> group_unique_check(
    std::span<const FrequentSubstringSet> groups);

}  // namespace ldi
