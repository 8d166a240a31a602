#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldi/table.hpp"

namespace ldi {

struct AttributeRatio {
  std::string attribute;
  std::size_t lcs_length = 0;
  std::size_t max_length = 0;
  double ratio = 0.0;
};

/// Mean over the attributes of |LCS| / max(|x|, |y|), lengths in characters.
/// Two empty (or MISSING) cells score 1; exactly one empty cell scores 0.
struct SimilarityScore {
  double value = 0.0;
  std::vector<AttributeRatio> per_attribute;
};

SimilarityScore tuple_similarity(const Table& table, std::size_t row_i, std::size_t row_j,
                                 std::span<const std::string> attributes);

enum class TupleMode { kDiverseSimilarity, kRandom };

struct Example {
  std::size_t row = 0;
  std::optional<SimilarityScore> score;  // absent in random mode
  std::string target;
};

struct ExampleSet {
  std::size_t query_row = 0;
  std::vector<Example> examples;
  std::size_t k_requested = 0;
  bool diverse = true;  // all example targets pairwise distinct
  TupleMode mode = TupleMode::kDiverseSimilarity;
};

/// Scores every row with a known target against a query row and picks k
/// examples. Decoded attribute values are cached, so one selector can serve
/// many queries over the same immutable table.
class TupleSelector {
 public:
  TupleSelector(const Table& table, std::string_view target, std::vector<std::string> attributes);

  const std::vector<std::size_t>& complete_rows() const noexcept { return complete_; }

  /// Scores for every complete row, in complete_rows() order.
  std::vector<SimilarityScore> score_all(std::size_t query_row) const;

  ExampleSet select(std::size_t query_row, std::size_t k, TupleMode mode, std::uint64_t seed) const;

 private:
  const Table& table_;
  std::size_t target_col_;
  std::vector<std::string> attributes_;
  std::vector<std::size_t> attribute_cols_;
  std::vector<std::size_t> complete_;
  std::vector<std::vector<std::u32string>> decoded_;  // [attribute][row]
};

/// Diverse-similarity mode: rank complete rows by similarity (score desc,
/// row asc), take the best row of each unseen target value until k examples,
/// then, if distinct values run out, fill with the next best rows.
/// Random mode: k complete rows drawn uniformly with the seed.
ExampleSet select_examples(const Table& table, std::size_t query_row,
                           std::span<const std::string> attributes, std::string_view target,
                           std::size_t k, TupleMode mode, std::uint64_t seed);

const char* to_string(TupleMode mode) noexcept;
TupleMode parse_tuple_mode(std::string_view text);

}  // namespace ldi
