#include <doctest.h>

#include <random>
#include <set>

#include "ldi/errors.hpp"
#include "ldi/tuple_selection.hpp"
#include "oracles.hpp"

using ldi::Cell;
using ldi::Table;

namespace {

// t_p, t_q, t_r, then the query t_i
Table worked_example() {
  return Table::from_rows({"A1", "A2", "AT"}, {{Cell("ab"), Cell("defg"), Cell("X")},
                                               {Cell("bc"), Cell("fg"), Cell("Y")},
                                               {Cell("cab"), Cell("ef"), Cell("X")},
                                               {Cell("abc"), Cell("def"), std::nullopt}});
}

const std::vector<std::string> kAttrs{"A1", "A2"};

std::vector<std::size_t> rows_of(const ldi::ExampleSet& s) {
  std::vector<std::size_t> out;
  for (const auto& e : s.examples) out.push_back(e.row);
  return out;
}

}  // namespace

TEST_CASE("similarity: worked example") {
  const Table t = worked_example();
  CHECK(ldi::tuple_similarity(t, 3, 0, kAttrs).value == doctest::Approx(0.708).epsilon(0.001));
  CHECK(ldi::tuple_similarity(t, 3, 1, kAttrs).value == doctest::Approx(0.5));
  CHECK(ldi::tuple_similarity(t, 3, 2, kAttrs).value == doctest::Approx(0.667).epsilon(0.001));
  const auto s = ldi::tuple_similarity(t, 3, 0, kAttrs);
  REQUIRE(s.per_attribute.size() == 2);
  CHECK(s.per_attribute[1].lcs_length == 3);
  CHECK(s.per_attribute[1].max_length == 4);
}

TEST_CASE("select_examples: worked example") {
  const Table t = worked_example();
  const auto one = ldi::select_examples(t, 3, kAttrs, "AT", 1, ldi::TupleMode::kDiverseSimilarity, 0);
  CHECK(rows_of(one) == std::vector<std::size_t>{0});
  const auto two = ldi::select_examples(t, 3, kAttrs, "AT", 2, ldi::TupleMode::kDiverseSimilarity, 0);
  CHECK(rows_of(two) == std::vector<std::size_t>{0, 1});
  CHECK(two.diverse);
  // only two distinct targets, so the third example repeats one
  const auto three = ldi::select_examples(t, 3, kAttrs, "AT", 3, ldi::TupleMode::kDiverseSimilarity, 0);
  CHECK(rows_of(three) == std::vector<std::size_t>{0, 2, 1});
  CHECK_FALSE(three.diverse);
  const auto many = ldi::select_examples(t, 3, kAttrs, "AT", 10, ldi::TupleMode::kDiverseSimilarity, 0);
  CHECK(many.examples.size() == 3);
  CHECK(many.k_requested == 10);
}

TEST_CASE("similarity: empty and missing cells") {
  const Table t = Table::from_rows({"A", "T"}, {{Cell(""), Cell("x")}, {std::nullopt, Cell("y")},
                                                {Cell("abc"), Cell("z")}});
  const std::vector<std::string> a{"A"};
  CHECK(ldi::tuple_similarity(t, 0, 1, a).value == 1.0);
  CHECK(ldi::tuple_similarity(t, 0, 2, a).value == 0.0);
  CHECK(ldi::tuple_similarity(t, 2, 2, a).value == 1.0);
}

TEST_CASE("select_examples matches the rank-then-dedup oracle") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 2 + rng() % 49, ncols = 1 + rng() % 3;
    std::vector<std::string> schema{"T"};
    std::vector<std::string> attrs;
    for (std::size_t c = 0; c < ncols; ++c) {
      schema.push_back("A" + std::to_string(c));
      attrs.push_back(schema.back());
    }
    std::vector<std::vector<Cell>> data;
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<Cell> row{rng() % 6 == 0 ? Cell() : Cell("v" + std::to_string(rng() % 5))};
      for (std::size_t c = 0; c < ncols; ++c) {
        if (rng() % 12 == 0) {
          row.emplace_back(std::nullopt);
        } else {
          row.emplace_back(oracle::random_string(rng, rng() % 8, "abc"));
        }
      }
      data.push_back(std::move(row));
    }
    data[0][0] = std::nullopt;
    data[1][0] = Cell("v0");
    const Table t = Table::from_rows(schema, data);
    const std::size_t k = 1 + rng() % 6;
    const auto got = ldi::select_examples(t, 0, attrs, "T", k, ldi::TupleMode::kDiverseSimilarity, 0);
    REQUIRE(rows_of(got) == oracle::diverse_selection(t, 0, attrs, "T", k));
    for (const auto& e : got.examples) {
      REQUIRE(e.score.has_value());
      REQUIRE(e.score->value == oracle::similarity(t, 0, e.row, attrs));
    }
  }
}

TEST_CASE("random mode: reproducible, distinct, complete rows only") {
  std::vector<std::vector<Cell>> data;
  for (int r = 0; r < 40; ++r) data.push_back({Cell("a" + std::to_string(r)), r % 4 ? Cell("t") : Cell()});
  const Table t = Table::from_rows({"A", "T"}, data);
  const std::vector<std::string> attrs{"A"};
  const auto a = ldi::select_examples(t, 0, attrs, "T", 5, ldi::TupleMode::kRandom, 9);
  const auto b = ldi::select_examples(t, 0, attrs, "T", 5, ldi::TupleMode::kRandom, 9);
  CHECK(rows_of(a) == rows_of(b));
  CHECK(a.examples.size() == 5);
  std::set<std::size_t> distinct;
  for (const auto& e : a.examples) {
    CHECK(e.row % 4 != 0);
    CHECK_FALSE(e.score.has_value());
    distinct.insert(e.row);
  }
  CHECK(distinct.size() == 5);
  // random mode works without attributes (all-attribute baseline with none left)
  CHECK_NOTHROW(ldi::select_examples(t, 0, {}, "T", 2, ldi::TupleMode::kRandom, 1));
}

TEST_CASE("select_examples: preconditions") {
  const Table t = worked_example();
  CHECK_THROWS_AS(ldi::select_examples(t, 0, kAttrs, "AT", 1, ldi::TupleMode::kDiverseSimilarity, 0),
                  ldi::InvalidArgument);
  CHECK_THROWS_AS(ldi::select_examples(t, 3, kAttrs, "AT", 0, ldi::TupleMode::kDiverseSimilarity, 0),
                  ldi::InvalidArgument);
  CHECK_THROWS_AS(ldi::select_examples(t, 3, {}, "AT", 1, ldi::TupleMode::kDiverseSimilarity, 0),
                  ldi::InvalidArgument);
  CHECK(ldi::parse_tuple_mode("random") == ldi::TupleMode::kRandom);
  CHECK_THROWS_AS(ldi::parse_tuple_mode("best"), ldi::InvalidArgument);
}
