#include <doctest.h>

#include <random>
#include <set>

#include "ldi/suffix_tree.hpp"
#include "oracles.hpp"

using ldi::GeneralizedSuffixTree;

namespace {

std::vector<std::u32string> random_docs(std::mt19937_64& rng, std::size_t max_docs, std::size_t max_len,
                                        std::string_view alphabet) {
  std::vector<std::u32string> docs(1 + rng() % max_docs);
  for (auto& d : docs) d = oracle::to_u32(oracle::random_string(rng, rng() % (max_len + 1), alphabet));
  return docs;
}

}  // namespace

TEST_CASE("suffix tree: one leaf per suffix") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto docs = random_docs(rng, 6, 12, "ab");
    const GeneralizedSuffixTree tree(docs);
    std::multiset<std::pair<std::uint32_t, std::int32_t>> leaves;
    for (auto id : tree.postorder()) {
      if (tree.is_leaf(id)) leaves.emplace(tree.leaf_document(id), tree.leaf_text_length(id));
    }
    std::multiset<std::pair<std::uint32_t, std::int32_t>> expected;
    for (std::uint32_t d = 0; d < docs.size(); ++d) {
      for (std::size_t len = 0; len <= docs[d].size(); ++len) expected.emplace(d, static_cast<std::int32_t>(len));
    }
    // the empty suffix of each document is just its terminator
    REQUIRE(leaves == expected);
  }
}

TEST_CASE("suffix tree: contains agrees with substring search") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto docs = random_docs(rng, 4, 10, "abc");
    const GeneralizedSuffixTree tree(docs);
    for (int probe = 0; probe < 20; ++probe) {
      const auto p = oracle::to_u32(oracle::random_string(rng, 1 + rng() % 4, "abc"));
      const bool expected = std::any_of(docs.begin(), docs.end(),
                                        [&](const auto& d) { return d.find(p) != std::u32string::npos; });
      CHECK(tree.contains(p) == expected);
    }
  }
}

TEST_CASE("suffix tree: postorder lists children before parents") {
  const std::vector<std::u32string> docs{U"banana", U"ananas"};
  const GeneralizedSuffixTree tree(docs);
  const auto order = tree.postorder();
  std::vector<int> position(tree.num_nodes(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i);
  CHECK(order.back() == tree.root());
  for (auto id : order) {
    if (id == tree.root()) continue;
    CHECK(position[tree.node(id).parent] > position[id]);
  }
}

TEST_CASE("suffix tree: empty and single documents") {
  const std::vector<std::u32string> none;
  CHECK(GeneralizedSuffixTree(none).num_nodes() >= 1);
  const std::vector<std::u32string> empty_doc{U""};
  CHECK_FALSE(GeneralizedSuffixTree(empty_doc).contains(U"a"));
  const std::vector<std::u32string> one{U"aaaa"};
  const GeneralizedSuffixTree t(one);
  CHECK(t.contains(U"aaaa"));
  CHECK_FALSE(t.contains(U"aaaaa"));
}
