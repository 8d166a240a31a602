#include "ldi/mining.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "ldi/errors.hpp"
#include "ldi/suffix_tree.hpp"
#include "ldi/unicode.hpp"

namespace ldi {

DocumentSet::DocumentSet(std::vector<std::u32string> docs) : docs_(std::move(docs)) {
  for (const auto& d : docs_) {
    max_length_ = std::max(max_length_, d.size());
    total_length_ += d.size();
  }
}

DocumentSet DocumentSet::from_utf8(std::span<const std::string> docs) {
  std::vector<std::u32string> decoded;
  decoded.reserve(docs.size());
  for (const auto& d : docs) decoded.push_back(utf8_decode(d));
  return DocumentSet(std::move(decoded));
}

std::string MiningStats::to_json() const {
  nlohmann::ordered_json j;
  j["nodes_built"] = nodes_built;
  j["substrings_reported"] = substrings_reported;
  j["wall_time_ms"] = std::chrono::duration<double, std::milli>(wall_time).count();
  j["peak_string_bytes"] = peak_string_bytes;
  if (max_substring_length) {
    j["max_substring_length"] = *max_substring_length;
  } else {
    j["max_substring_length"] = nullptr;
  }
  return j.dump();
}

std::size_t ceil_fraction(double fraction, std::size_t count) {
  const double exact = fraction * static_cast<double>(count);
  const double eps = 1e-9 * std::max(1.0, static_cast<double>(count));
  const double c = std::ceil(exact - eps);
  return c <= 0.0 ? 0 : static_cast<std::size_t>(c);
}

FrequentSubstringSet frequent_substrings(const DocumentSet& docs, double q,
                                         const MiningOptions& options) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw InvalidArgument("q must be in (0, 1], got " + std::to_string(q));
  }
  const auto started = std::chrono::steady_clock::now();

  FrequentSubstringSet result;
  result.threshold = std::max<std::size_t>(1, ceil_fraction(q, docs.size()));
  result.stats.max_substring_length = options.max_substring_length;
  if (docs.size() == 0 || docs.total_length() == 0) {
    result.stats.wall_time = std::chrono::steady_clock::now() - started;
    return result;
  }

  GeneralizedSuffixTree tree(docs.docs());
  result.stats.nodes_built = tree.num_nodes();
  using Tree = GeneralizedSuffixTree;

  // Distinct-document sets merged bottom-up, small into large. A node's set is
  // released as soon as it has been folded into its parent.
  std::vector<std::unordered_set<std::uint32_t>> sets(tree.num_nodes());
  std::vector<std::uint32_t> doc_count(tree.num_nodes(), 0);
  const auto order = tree.postorder();
  for (std::int32_t id : order) {
    if (id == tree.root()) break;  // root is last and carries the empty string
    auto& own = sets[id];
    if (tree.is_leaf(id)) {
      own.insert(tree.leaf_document(id));
    } else {
      for (std::int32_t chain : {tree.node(id).first_child, tree.node(id).first_terminal}) {
        for (std::int32_t c = chain; c != Tree::kNone; c = tree.node(c).next_sibling) {
          auto& child = sets[c];
          if (child.size() > own.size()) own.swap(child);
          own.insert(child.begin(), child.end());
          std::unordered_set<std::uint32_t>().swap(child);
        }
      }
    }
    doc_count[id] = static_cast<std::uint32_t>(own.size());
  }
  sets.clear();

  const auto& text = tree.text();
  const std::size_t cap = options.max_substring_length.value_or(SIZE_MAX);
  std::size_t bytes = 0;
  for (std::int32_t id : order) {
    if (id == tree.root() || doc_count[id] < result.threshold) continue;
    const auto& node = tree.node(id);
    const std::int32_t parent_depth = tree.node(node.parent).depth;
    std::int32_t deepest = tree.is_leaf(id) ? tree.leaf_text_length(id) : node.depth;
    deepest = static_cast<std::int32_t>(std::min<std::size_t>(deepest, cap));
    if (deepest <= parent_depth) continue;
    const std::int32_t start = tree.label_start(id);
    std::u32string label(text.begin() + start, text.begin() + start + deepest);
    for (std::int32_t len = parent_depth + 1; len <= deepest; ++len) {
      std::string s = utf8_encode(std::u32string_view(label).substr(0, len));
      bytes += s.size();
      result.entries.emplace(std::move(s), doc_count[id]);
    }
  }
  result.stats.substrings_reported = result.entries.size();
  result.stats.peak_string_bytes = bytes;
  result.stats.wall_time = std::chrono::steady_clock::now() - started;
  return result;
}

std::vector<std::set<std::string>> group_unique_check(
    std::span<const FrequentSubstringSet> groups) {
  constexpr std::size_t kShared = SIZE_MAX;
  std::unordered_map<std::string_view, std::size_t> owner;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (const auto& [s, count] : groups[g].entries) {
      auto [it, inserted] = owner.try_emplace(s, g);
      if (!inserted && it->second != g) it->second = kShared;
    }
  }
  std::vector<std::set<std::string>> unique(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (const auto& [s, count] : groups[g].entries) {
      if (owner.at(s) == g) unique[g].insert(s);
    }
  }
  return unique;
}

}  // namespace ldi
