#include <doctest.h>

#include <random>
#include <set>

#include "ldi/attribute_selection.hpp"
#include "ldi/errors.hpp"
#include "oracles.hpp"

using ldi::Cell;
using ldi::GroupPatternSet;
using ldi::Table;

namespace {

std::set<std::string> keys(const GroupPatternSet& s) {
  std::set<std::string> out;
  for (const auto& [k, v] : s.patterns) out.insert(k);
  return out;
}

GroupPatternSet pattern_set(std::string key, std::initializer_list<const char*> patterns) {
  GroupPatternSet s{std::move(key), {}, 1};
  for (const char* p : patterns) s.patterns.emplace(p, 1);
  return s;
}

ldi::GroupSample whole_table_sample(const Table& t, const std::string& target) {
  ldi::SamplingConfig cfg;
  cfg.m = 1000;
  cfg.n = 1000;
  return ldi::group_sample(t, target, cfg);
}

}  // namespace

TEST_CASE("pattern chain: frequent, unique, pruned") {
  // second group makes "a" frequent elsewhere
  const Table t = Table::from_rows({"T", "C"}, {{Cell("X"), Cell("aab")},
                                                 {Cell("X"), Cell("aa")},
                                                 {Cell("X"), Cell("ab")},
                                                 {Cell("Y"), Cell("ca")},
                                                 {Cell("Y"), Cell("ad")}});
  const auto groups = ldi::group_by_target(t, "T");
  const auto raw = ldi::detect_group_patterns(t, groups, "C", 0.6);
  CHECK(keys(raw[0]) == std::set<std::string>{"a", "aa", "ab", "b"});
  const auto unique = ldi::filter_unique_patterns(raw);
  CHECK(keys(unique[0]) == std::set<std::string>{"aa", "ab", "b"});
  CHECK(keys(ldi::prune_contained(unique[0])) == std::set<std::string>{"aa", "ab"});
}

TEST_CASE("evaluate_dependency: four of five groups supported") {
  const std::vector<GroupPatternSet> sets{pattern_set("g1", {"aa", "ab"}), pattern_set("g2", {"cc", "ac"}),
                                          pattern_set("g3", {"d"}), pattern_set("g4", {}),
                                          pattern_set("g5", {"ee"})};
  const auto at_08 = ldi::evaluate_dependency(sets, 0.8, "C");
  CHECK(at_08.verdict);
  CHECK(at_08.supporting.size() == 4);
  CHECK(at_08.required == 4);
  CHECK(at_08.witnesses.at("g3") == std::vector<std::string>{"d"});
  CHECK_FALSE(at_08.witnesses.count("g4"));
  CHECK_FALSE(ldi::evaluate_dependency(sets, 0.9, "C").verdict);
  CHECK_THROWS_AS(ldi::evaluate_dependency(sets, 1.1), ldi::InvalidArgument);
}

TEST_CASE("prune_contained keeps only maximal patterns") {
  const auto pruned = ldi::prune_contained(pattern_set("g", {"7", "70", "702", "02", "-", "x"}));
  CHECK(keys(pruned) == std::set<std::string>{"702", "-", "x"});
}

TEST_CASE("group_sample: sizes, determinism and fallback") {
  std::vector<std::vector<Cell>> rows;
  for (int g = 0; g < 12; ++g) {
    for (int r = 0; r < 15 + g; ++r) rows.push_back({Cell("g" + std::to_string(g)), Cell(std::to_string(r))});
  }
  rows.push_back({Cell("tiny"), Cell("1")});
  rows.push_back({std::nullopt, Cell("2")});
  const Table t = Table::from_rows({"T", "C"}, rows);

  ldi::SamplingConfig cfg{10, 10, 5};
  const auto s = ldi::group_sample(t, "T", cfg);
  CHECK_FALSE(s.fallback);
  CHECK(s.groups.groups.size() == 10);
  CHECK(s.table.num_rows() == 100);
  for (const auto& g : s.groups.groups) CHECK(g.rows.size() == 10);
  for (std::size_t i = 0; i < s.source_rows.size(); ++i) {
    CHECK(s.table.cell(i, 1) == t.cell(s.source_rows[i], 1));
  }
  CHECK(ldi::group_sample(t, "T", cfg).source_rows == s.source_rows);

  cfg.m = 13;
  const auto fb = ldi::group_sample(t, "T", cfg);
  CHECK(fb.fallback);
  CHECK(fb.groups.groups.size() == 13);
  CHECK(fb.table.num_rows() == 121);
}

TEST_CASE("select_attributes: planted dependency with noise and missing cells") {
  std::mt19937_64 rng(17);
  std::vector<std::vector<Cell>> rows;
  for (int g = 0; g < 12; ++g) {
    for (int r = 0; r < 20; ++r) {
      std::string b = r == 0 ? oracle::random_string(rng, 4, "xyz")
                             : "K" + std::string(1, static_cast<char>('A' + g)) + "-" +
                                   oracle::random_string(rng, 3, "xyz");
      Cell c = rng() % 10 == 0 ? Cell() : Cell(oracle::random_string(rng, 5, "xyz"));
      rows.push_back({Cell("t" + std::to_string(g)), Cell(b), c, Cell("same")});
    }
  }
  const Table t = Table::from_rows({"T", "B", "C", "D"}, rows);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto sel = ldi::select_attributes(t, "T", {10, 10, seed}, {0.9, 0.9, true, 2000});
    REQUIRE(sel.selected == std::vector<std::string>{"B"});
    CHECK(sel.reports.size() == 3);
    CHECK(sel.reports[2].note == "constant");
    CHECK(sel.sampled_groups == 10);
  }
}

TEST_CASE("select_attributes: p or q of zero imposes nothing") {
  const Table t = Table::from_rows({"T", "A", "B"}, {{Cell("x"), Cell("1"), Cell("z")},
                                                      {Cell("y"), Cell("1"), Cell("w")}});
  const auto sel = ldi::select_attributes(t, "T", {}, {0.0, 0.9, true, 2000});
  CHECK(sel.selected == std::vector<std::string>{"A", "B"});
  CHECK(sel.reports[0].note == "unconstrained");
  CHECK_THROWS_AS(ldi::select_attributes(t, "T", {}, {1.2, 0.9, true, 2000}), ldi::InvalidArgument);
  CHECK_THROWS_AS(ldi::select_attributes(t, "missing", {}, {}), ldi::SchemaError);
}

TEST_CASE("properties: p and q monotonicity, pruning neutrality") {
  std::mt19937_64 rng(4242);
  for (int fixture = 0; fixture < 60; ++fixture) {
    const Table t = oracle::grouped_fixture(rng, 3 + rng() % 6, 4 + rng() % 8, 3);
    const auto sample = whole_table_sample(t, "T");
    const double p1 = (rng() % 101) / 100.0, p2 = std::min(1.0, p1 + (rng() % 50) / 100.0);
    const double q = 0.3 + (rng() % 71) / 100.0;
    const auto lo = ldi::select_attributes_on_sample(sample, "T", {p1, q, true, 2000});
    const auto hi = ldi::select_attributes_on_sample(sample, "T", {p2, q, true, 2000});
    for (const auto& a : hi.selected) {
      REQUIRE(std::find(lo.selected.begin(), lo.selected.end(), a) != lo.selected.end());
    }
    const auto unpruned = ldi::select_attributes_on_sample(sample, "T", {p1, q, false, 2000});
    for (std::size_t i = 0; i < lo.reports.size(); ++i) {
      REQUIRE(lo.reports[i].verdict == unpruned.reports[i].verdict);
      REQUIRE(lo.reports[i].supporting == unpruned.reports[i].supporting);
    }

    const double q1 = 0.2 + (rng() % 60) / 100.0, q2 = std::min(1.0, q1 + (rng() % 40) / 100.0);
    for (const char* col : {"C0", "C1", "C2"}) {
      const auto a = ldi::detect_group_patterns(sample.table, sample.groups, col, q1);
      const auto b = ldi::detect_group_patterns(sample.table, sample.groups, col, q2);
      for (std::size_t g = 0; g < a.size(); ++g) {
        for (const auto& [s, c] : b[g].patterns) REQUIRE(a[g].patterns.count(s));
      }
    }
  }
}
