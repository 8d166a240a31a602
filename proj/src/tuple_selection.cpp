#include "ldi/tuple_selection.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "ldi/errors.hpp"
#include "ldi/lcs.hpp"
#include "ldi/random.hpp"
#include "ldi/unicode.hpp"

namespace ldi {
namespace {

double ratio_of(std::size_t lcs, std::size_t len_a, std::size_t len_b) {
  const std::size_t longest = std::max(len_a, len_b);
  if (longest == 0) return 1.0;
  return static_cast<double>(lcs) / static_cast<double>(longest);
}

std::u32string decode_cell(const Cell& c) { return c ? utf8_decode(*c) : std::u32string{}; }

}  // namespace

SimilarityScore tuple_similarity(const Table& table, std::size_t row_i, std::size_t row_j,
                                 std::span<const std::string> attributes) {
  if (attributes.empty()) throw InvalidArgument("similarity needs at least one attribute");
  if (row_i >= table.num_rows() || row_j >= table.num_rows()) {
    throw InvalidArgument("row index out of range");
  }
  SimilarityScore score;
  double sum = 0.0;
  for (const auto& attribute : attributes) {
    const std::size_t col = table.index_of(attribute);
    const auto a = decode_cell(table.cell(row_i, col));
    const auto b = decode_cell(table.cell(row_j, col));
    const std::size_t lcs = lcs_length(a, b);
    AttributeRatio r{attribute, lcs, std::max(a.size(), b.size()), ratio_of(lcs, a.size(), b.size())};
    sum += r.ratio;
    score.per_attribute.push_back(std::move(r));
  }
  score.value = sum / static_cast<double>(attributes.size());
  return score;
}

TupleSelector::TupleSelector(const Table& table, std::string_view target,
                             std::vector<std::string> attributes)
    : table_(table), target_col_(table.index_of(target)), attributes_(std::move(attributes)) {
  for (const auto& a : attributes_) attribute_cols_.push_back(table.index_of(a));
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    if (table.cell(r, target_col_)) complete_.push_back(r);
  }
  decoded_.resize(attribute_cols_.size());
  for (std::size_t a = 0; a < attribute_cols_.size(); ++a) {
    decoded_[a].resize(table.num_rows());
    for (std::size_t r = 0; r < table.num_rows(); ++r) {
      decoded_[a][r] = decode_cell(table.cell(r, attribute_cols_[a]));
    }
  }
}

std::vector<SimilarityScore> TupleSelector::score_all(std::size_t query_row) const {
  if (attributes_.empty()) throw InvalidArgument("similarity needs at least one attribute");
  std::vector<SimilarityScore> scores(complete_.size());
  std::vector<double> sums(complete_.size(), 0.0);
  for (std::size_t a = 0; a < attributes_.size(); ++a) {
    // one suffix structure per (query, attribute), reused across all rows
    const LcsQueryIndex index(decoded_[a][query_row]);
    const std::size_t query_len = index.query().size();
    for (std::size_t i = 0; i < complete_.size(); ++i) {
      const auto& other = decoded_[a][complete_[i]];
      const std::size_t lcs = index.length_with(other);
      AttributeRatio r{attributes_[a], lcs, std::max(query_len, other.size()),
                       ratio_of(lcs, query_len, other.size())};
      sums[i] += r.ratio;
      scores[i].per_attribute.push_back(std::move(r));
    }
  }
  for (std::size_t i = 0; i < complete_.size(); ++i) {
    scores[i].value = sums[i] / static_cast<double>(attributes_.size());
  }
  return scores;
}

ExampleSet TupleSelector::select(std::size_t query_row, std::size_t k, TupleMode mode,
                                 std::uint64_t seed) const {
  if (k == 0) throw InvalidArgument("k must be >= 1");
  if (query_row >= table_.num_rows()) throw InvalidArgument("query row out of range");
  if (complete_.empty()) throw InvalidArgument("no rows with a known target value");

  ExampleSet out;
  out.query_row = query_row;
  out.k_requested = k;
  out.mode = mode;

  auto target_of = [&](std::size_t row) { return *table_.cell(row, target_col_); };

  if (mode == TupleMode::kRandom) {
    Rng rng(seed);
    const std::size_t take = std::min(k, complete_.size());
    std::vector<std::size_t> rows;
    for (std::size_t i : rng.sample_indices(complete_.size(), take)) rows.push_back(complete_[i]);
    std::sort(rows.begin(), rows.end());
    for (std::size_t r : rows) out.examples.push_back(Example{r, std::nullopt, target_of(r)});
  } else {
    const auto scores = score_all(query_row);
    std::vector<std::size_t> order(complete_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (scores[a].value != scores[b].value) return scores[a].value > scores[b].value;
      return complete_[a] < complete_[b];
    });
    std::vector<bool> taken(order.size(), false);
    std::unordered_set<std::string> seen;
    std::vector<std::size_t> picked;
    for (std::size_t pos = 0; pos < order.size() && picked.size() < k; ++pos) {
      if (seen.insert(target_of(complete_[order[pos]])).second) {
        picked.push_back(pos);
        taken[pos] = true;
      }
    }
    for (std::size_t pos = 0; pos < order.size() && picked.size() < k; ++pos) {
      if (!taken[pos]) picked.push_back(pos);
    }
    // picked positions index the ranking, so sorting them restores score order
    std::sort(picked.begin(), picked.end());
    for (std::size_t pos : picked) {
      const std::size_t i = order[pos];
      out.examples.push_back(Example{complete_[i], scores[i], target_of(complete_[i])});
    }
  }

  std::unordered_set<std::string> distinct;
  for (const auto& e : out.examples) distinct.insert(e.target);
  out.diverse = distinct.size() == out.examples.size();
  return out;
}

ExampleSet select_examples(const Table& table, std::size_t query_row,
                           std::span<const std::string> attributes, std::string_view target,
                           std::size_t k, TupleMode mode, std::uint64_t seed) {
  if (mode == TupleMode::kDiverseSimilarity && attributes.empty()) {
    throw InvalidArgument("diverse-similarity selection needs at least one attribute");
  }
  const std::size_t target_col = table.index_of(target);
  if (query_row < table.num_rows() && table.cell(query_row, target_col)) {
    throw InvalidArgument("query row " + std::to_string(query_row) + " already has a target value");
  }
  TupleSelector selector(table, target, {attributes.begin(), attributes.end()});
  return selector.select(query_row, k, mode, seed);
}

const char* to_string(TupleMode mode) noexcept {
  return mode == TupleMode::kRandom ? "random" : "diverse";
}

TupleMode parse_tuple_mode(std::string_view text) {
  if (text == "diverse" || text == "diverse-similarity") return TupleMode::kDiverseSimilarity;
  if (text == "random") return TupleMode::kRandom;
  throw InvalidArgument("unknown tuple mode: " + std::string(text));
}

}  // namespace ldi
