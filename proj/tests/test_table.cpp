#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "ldi/errors.hpp"
#include "ldi/table.hpp"
#include "ldi/unicode.hpp"

using ldi::Cell;
using ldi::Table;

TEST_CASE("csv: header and missing tokens") {
  const Table t = ldi::load_csv("name,city\nBob,NA\n\"NA\",\"\"\nAnn,\n");
  REQUIRE(t.num_rows() == 3);
  CHECK(t.schema() == std::vector<std::string>{"name", "city"});
  CHECK_FALSE(t.cell(0, "city").has_value());
  CHECK(t.cell(1, "name") == Cell("NA"));
  CHECK(t.cell(1, "city") == Cell(""));
  CHECK_FALSE(t.cell(2, "city").has_value());
  CHECK(t.count_missing(1) == 2);
}

TEST_CASE("csv: quoting, embedded delimiters and newlines") {
  const Table t = ldi::load_csv("a,b\r\n\"x, y\",\"line1\nline2\"\r\n\"say \"\"hi\"\"\",z\r\n");
  REQUIRE(t.num_rows() == 2);
  CHECK(*t.cell(0, 0) == "x, y");
  CHECK(*t.cell(0, 1) == "line1\nline2");
  CHECK(*t.cell(1, 0) == "say \"hi\"");
}

TEST_CASE("csv: malformed input") {
  CHECK_THROWS_AS(ldi::load_csv("a,b\n1,2,3\n"), ldi::ParseError);
  CHECK_THROWS_AS(ldi::load_csv("a,b\n\"open,2\n"), ldi::ParseError);
  CHECK_THROWS_AS(ldi::load_csv("a,a\n1,2\n"), ldi::SchemaError);
  CHECK_THROWS_AS(ldi::load_csv("a,b\n\xff,2\n"), ldi::ParseError);
}

TEST_CASE("csv: 1000 rows with 100 N/A cells count exactly 100 missing") {
  std::mt19937_64 rng(7);
  std::set<std::size_t> na_rows;
  while (na_rows.size() < 100) na_rows.insert(rng() % 1000);
  std::string text = "id,city\n";
  for (std::size_t r = 0; r < 1000; ++r) {
    text += std::to_string(r) + "," + (na_rows.count(r) ? "N/A" : "c" + std::to_string(r % 7)) + "\n";
  }
  const Table t = ldi::load_csv(text);
  // independent count: scan the raw lines
  std::size_t scanned = 0;
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) scanned += line.ends_with(",N/A");
  CHECK(scanned == 100);
  CHECK(t.count_missing(t.index_of("city")) == scanned);
}

TEST_CASE("csv: round trip preserves MISSING versus empty") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> pool{"", "NA", "N/A", "null", "a,b", "q\"uote", "multi\nline",
                                      "  spaced ", "München", "plain"};
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t cols = 1 + rng() % 4, rows = rng() % 6;
    std::vector<std::string> schema;
    for (std::size_t c = 0; c < cols; ++c) schema.push_back("c" + std::to_string(c));
    std::vector<std::vector<Cell>> data(rows);
    for (auto& row : data) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (rng() % 5 == 0) {
          row.emplace_back(std::nullopt);
        } else {
          row.emplace_back(pool[rng() % pool.size()]);
        }
      }
    }
    const Table original = Table::from_rows(schema, data);
    const Table back = ldi::load_csv(ldi::to_csv(original));
    REQUIRE(back == original);
  }
}

TEST_CASE("table: schema checks") {
  CHECK_THROWS_AS(Table({"a", ""}, {{}, {}}), ldi::SchemaError);
  CHECK_THROWS_AS(Table::from_rows({"a", "b"}, {{Cell("1")}}), ldi::ParseError);
  const Table t = Table::from_rows({"a"}, {{Cell("1")}});
  CHECK_THROWS_AS(t.index_of("zzz"), ldi::SchemaError);
}

TEST_CASE("group_by_target: first-appearance order and worklist") {
  const Table t = Table::from_rows(
      {"T", "x"}, {{Cell("b"), Cell("1")}, {std::nullopt, Cell("2")}, {Cell("a"), Cell("3")},
                   {Cell("b"), Cell("4")}, {Cell("B"), Cell("5")}});
  const auto idx = ldi::group_by_target(t, "T");
  REQUIRE(idx.groups.size() == 3);
  CHECK(idx.groups[0].key == "b");
  CHECK(idx.groups[0].rows == std::vector<std::size_t>{0, 3});
  CHECK(idx.groups[1].key == "a");
  CHECK(idx.worklist == std::vector<std::size_t>{1});

  const auto folded = ldi::group_by_target(t, "T", true);
  REQUIRE(folded.groups.size() == 2);
  CHECK(folded.groups[0].rows == std::vector<std::size_t>{0, 3, 4});
}

TEST_CASE("mask_cells: count, determinism, plan round trip") {
  std::vector<std::vector<Cell>> rows;
  for (int r = 0; r < 1000; ++r) rows.push_back({Cell("v" + std::to_string(r % 9)), Cell("x")});
  const Table t = Table::from_rows({"T", "x"}, rows);

  const auto [masked, plan] = ldi::mask_cells(t, "T", 0.1, 5);
  CHECK(plan.masked.size() == 100);
  CHECK(masked.count_missing(0) == 100);
  for (std::size_t i = 1; i < plan.masked.size(); ++i) CHECK(plan.masked[i - 1].row < plan.masked[i].row);
  for (const auto& m : plan.masked) CHECK(*t.cell(m.row, 0) == m.value);

  const auto again = ldi::mask_cells(t, "T", 0.1, 5);
  CHECK(again.second == plan);
  CHECK(ldi::mask_cells(t, "T", 0.1, 6).second.masked != plan.masked);
  CHECK(ldi::MaskPlan::from_json(plan.to_json()) == plan);
  CHECK_THROWS_AS(ldi::mask_cells(t, "T", 0.0, 1), ldi::InvalidArgument);
}

TEST_CASE("cap_cell_length counts characters, not bytes") {
  Table t = Table::from_rows({"a"}, {{Cell("ééééé")}, {Cell("abc")}, {std::nullopt}});
  CHECK(ldi::cap_cell_length(t, 3) == 1);
  CHECK(*t.cell(0, 0) == "ééé");
  CHECK(*t.cell(1, 0) == "abc");
}

TEST_CASE("utf8 decode/encode") {
  const std::string s = "a\xc3\xa9\xe2\x82\xac\xf0\x9f\x98\x80";
  const auto u = ldi::utf8_decode(s);
  CHECK(u == std::u32string{U'a', U'é', U'€', U'\U0001F600'});
  CHECK(ldi::utf8_encode(u) == s);
  CHECK(ldi::utf8_length(s) == 4);
  CHECK_THROWS_AS(ldi::utf8_decode("\xc0\xaf"), ldi::ParseError);      // overlong
  CHECK_THROWS_AS(ldi::utf8_decode("\xed\xa0\x80"), ldi::ParseError);  // surrogate
  CHECK_THROWS_AS(ldi::utf8_decode("\xf4\x90\x80\x80"), ldi::ParseError);
  CHECK_THROWS_AS(ldi::utf8_decode("\xe2\x82"), ldi::ParseError);
}
