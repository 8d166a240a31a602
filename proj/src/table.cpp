#include "ldi/table.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "ldi/errors.hpp"
#include "ldi/random.hpp"
#include "ldi/unicode.hpp"

namespace ldi {

Table::Table(std::vector<std::string> schema, std::vector<std::vector<Cell>> columns)
    : schema_(std::move(schema)), columns_(std::move(columns)) {
  if (schema_.size() != columns_.size()) {
    throw SchemaError("schema has " + std::to_string(schema_.size()) +
                      " attributes but " + std::to_string(columns_.size()) +
                      " columns were given");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : schema_) {
    if (name.empty()) throw SchemaError("attribute names must be non-empty");
    if (!seen.insert(name).second) throw SchemaError("duplicate attribute name: " + name);
  }
  rows_ = columns_.empty() ? 0 : columns_.front().size();
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (columns_[c].size() != rows_) {
      throw SchemaError("column '" + schema_[c] + "' has " +
                        std::to_string(columns_[c].size()) + " cells, expected " +
                        std::to_string(rows_));
    }
  }
}

Table Table::from_rows(std::vector<std::string> schema,
                       const std::vector<std::vector<Cell>>& rows) {
  std::vector<std::vector<Cell>> columns(schema.size());
  for (auto& col : columns) col.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != schema.size()) {
      throw ParseError("row " + std::to_string(r) + " has " +
                           std::to_string(rows[r].size()) + " cells, expected " +
                           std::to_string(schema.size()),
                       r);
    }
    for (std::size_t c = 0; c < schema.size(); ++c) columns[c].push_back(rows[r][c]);
  }
  return Table(std::move(schema), std::move(columns));
}

std::optional<std::size_t> Table::find(std::string_view attribute) const {
  auto it = std::find(schema_.begin(), schema_.end(), attribute);
  if (it == schema_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - schema_.begin());
}

std::size_t Table::index_of(std::string_view attribute) const {
  if (auto idx = find(attribute)) return *idx;
  throw SchemaError("unknown attribute: " + std::string(attribute));
}

void Table::set_cell(std::size_t row, std::size_t col, Cell value) {
  columns_.at(col).at(row) = std::move(value);
}

Table Table::select_rows(std::span<const std::size_t> rows) const {
  std::vector<std::vector<Cell>> columns(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    columns[c].reserve(rows.size());
    for (std::size_t r : rows) columns[c].push_back(columns_[c].at(r));
  }
  return Table(schema_, std::move(columns));
}

std::size_t Table::count_missing(std::size_t col) const {
  const auto& column = columns_.at(col);
  return static_cast<std::size_t>(
      std::count_if(column.begin(), column.end(), [](const Cell& c) { return !c; }));
}

// ---------------------------------------------------------------------------
// CSV

namespace {

struct Field {
  std::string text;
  bool quoted = false;
};

// RFC-4180 reader that remembers whether each field was quoted.
class CsvReader {
 public:
  CsvReader(std::string_view data, char delimiter) : data_(data), delim_(delimiter) {}

  // Reads one record; returns false at end of input.
  bool next(std::vector<Field>& record) {
    record.clear();
    if (pos_ >= data_.size()) return false;
    ++line_;
    Field field;
    bool at_field_start = true;
    while (true) {
      if (pos_ >= data_.size()) {
        record.push_back(std::move(field));
        return true;
      }
      char ch = data_[pos_];
      if (at_field_start && ch == '"') {
        field.quoted = true;
        ++pos_;
        read_quoted(field.text);
        at_field_start = false;
        continue;
      }
      if (ch == delim_) {
        ++pos_;
        record.push_back(std::move(field));
        field = Field{};
        at_field_start = true;
        continue;
      }
      if (ch == '\r' || ch == '\n') {
        ++pos_;
        if (ch == '\r' && pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
        record.push_back(std::move(field));
        return true;
      }
      if (field.quoted) {
        throw ParseError("unexpected character after closing quote on line " +
                             std::to_string(line_),
                         line_);
      }
      field.text.push_back(ch);
      at_field_start = false;
      ++pos_;
    }
  }

  std::size_t line() const noexcept { return line_; }

 private:
  void read_quoted(std::string& out) {
    const std::size_t start_line = line_;
    while (pos_ < data_.size()) {
      char ch = data_[pos_++];
      if (ch == '"') {
        if (pos_ < data_.size() && data_[pos_] == '"') {
          out.push_back('"');
          ++pos_;
        } else {
          return;
        }
      } else {
        if (ch == '\n') ++line_;
        out.push_back(ch);
      }
    }
    throw ParseError("unterminated quoted field starting on line " +
                         std::to_string(start_line),
                     start_line);
  }

  std::string_view data_;
  char delim_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

bool needs_quotes(const std::string& value, const CsvOptions& options) {
  if (value.empty()) return true;
  if (std::find(options.missing_tokens.begin(), options.missing_tokens.end(), value) !=
      options.missing_tokens.end()) {
    return true;
  }
  for (char ch : value) {
    if (ch == options.delimiter || ch == '"' || ch == '\n' || ch == '\r') return true;
  }
  return false;
}

void write_field(std::ostream& out, const Cell& cell, const CsvOptions& options) {
  if (!cell) return;
  if (!needs_quotes(*cell, options)) {
    out << *cell;
    return;
  }
  out << '"';
  for (char ch : *cell) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

}  // namespace

Table load_csv(std::string_view text, const CsvOptions& options) {
  // Strip a UTF-8 byte-order mark.
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  CsvReader reader(text, options.delimiter);
  std::vector<Field> record;
  if (!reader.next(record)) throw ParseError("CSV input is empty (header row required)", 1);

  std::vector<std::string> schema;
  schema.reserve(record.size());
  for (auto& f : record) schema.push_back(std::move(f.text));
  {
    std::unordered_set<std::string> seen;
    for (const auto& name : schema) {
      if (name.empty()) throw SchemaError("empty attribute name in CSV header");
      if (!seen.insert(name).second) throw SchemaError("duplicate attribute name: " + name);
    }
  }

  std::vector<std::vector<Cell>> columns(schema.size());
  while (reader.next(record)) {
    // Blank lines are skipped, except in single-column tables where they are
    // the only way to spell a MISSING cell.
    if (record.size() == 1 && !record[0].quoted && record[0].text.empty() &&
        schema.size() != 1) {
      continue;
    }
    if (record.size() != schema.size()) {
      throw ParseError("row " + std::to_string(reader.line()) + " has " +
                           std::to_string(record.size()) + " fields, expected " +
                           std::to_string(schema.size()),
                       reader.line());
    }
    for (std::size_t c = 0; c < record.size(); ++c) {
      Field& f = record[c];
      utf8_length(f.text);  // validates encoding
      bool missing = !f.quoted &&
                     std::find(options.missing_tokens.begin(), options.missing_tokens.end(),
                               f.text) != options.missing_tokens.end();
      if (missing) {
        columns[c].emplace_back(std::nullopt);
      } else {
        columns[c].emplace_back(std::move(f.text));
      }
    }
  }
  return Table(std::move(schema), std::move(columns));
}

Table load_csv(std::istream& in, const CsvOptions& options) {
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_csv(std::string_view(data), options);
}

Table load_csv_file(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  return load_csv(in, options);
}

void write_csv(std::ostream& out, const Table& table, const CsvOptions& options) {
  const auto& schema = table.schema();
  for (std::size_t c = 0; c < schema.size(); ++c) {
    if (c) out << options.delimiter;
    write_field(out, Cell(schema[c]), options);
  }
  out << '\n';
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    for (std::size_t c = 0; c < schema.size(); ++c) {
      if (c) out << options.delimiter;
      write_field(out, table.cell(r, c), options);
    }
    out << '\n';
  }
}

std::string to_csv(const Table& table, const CsvOptions& options) {
  std::ostringstream out;
  write_csv(out, table, options);
  return out.str();
}

void write_csv_file(const std::string& path, const Table& table, const CsvOptions& options) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  write_csv(out, table, options);
}

// ---------------------------------------------------------------------------
// Grouping and masking

const Group* GroupIndex::find(std::string_view key) const {
  for (const auto& g : groups) {
    if (g.key == key) return &g;
  }
  return nullptr;
}

std::size_t GroupIndex::grouped_rows() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.rows.size();
  return n;
}

GroupIndex group_by_target(const Table& table, std::string_view target, bool fold_case) {
  const std::size_t col = table.index_of(target);
  GroupIndex index;
  index.target = std::string(target);
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    const Cell& value = table.cell(r, col);
    if (!value) {
      index.worklist.push_back(r);
      continue;
    }
    std::string key = *value;
    if (fold_case) {
      std::transform(key.begin(), key.end(), key.begin(),
                     [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    }
    auto [it, inserted] = slot.try_emplace(key, index.groups.size());
    if (inserted) index.groups.push_back(Group{*value, {}});
    index.groups[it->second].rows.push_back(r);
  }
  return index;
}

std::string MaskPlan::to_json() const {
  nlohmann::ordered_json j;
  j["target"] = target;
  j["rate"] = rate;
  j["seed"] = seed;
  auto cells = nlohmann::ordered_json::array();
  for (const auto& m : masked) {
    cells.push_back(nlohmann::ordered_json{{"row", m.row}, {"value", m.value}});
  }
  j["masked"] = std::move(cells);
  return j.dump();
}

MaskPlan MaskPlan::from_json(std::string_view json) {
  try {
    auto j = nlohmann::json::parse(json);
    MaskPlan plan;
    plan.target = j.at("target").get<std::string>();
    plan.rate = j.at("rate").get<double>();
    plan.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& m : j.at("masked")) {
      plan.masked.push_back({m.at("row").get<std::size_t>(), m.at("value").get<std::string>()});
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid mask plan: ") + e.what());
  }
}

std::pair<Table, MaskPlan> mask_cells(const Table& table, std::string_view target,
                                      double rate, std::uint64_t seed) {
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw InvalidArgument("mask rate must be in (0, 1], got " + std::to_string(rate));
  }
  const std::size_t col = table.index_of(target);
  std::vector<std::size_t> present;
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    if (table.cell(r, col)) present.push_back(r);
  }
  if (present.empty()) {
    throw InvalidArgument("target '" + std::string(target) + "' has no values to mask");
  }
  auto count = static_cast<std::size_t>(std::llround(rate * static_cast<double>(present.size())));
  count = std::min(count, present.size());

  Rng rng(seed);
  auto picks = rng.sample_indices(present.size(), count);
  std::vector<std::size_t> rows;
  rows.reserve(count);
  for (std::size_t p : picks) rows.push_back(present[p]);
  std::sort(rows.begin(), rows.end());

  MaskPlan plan{std::string(target), rate, seed, {}};
  Table masked = table;
  for (std::size_t r : rows) {
    plan.masked.push_back({r, *table.cell(r, col)});
    masked.set_cell(r, col, std::nullopt);
  }
  return {std::move(masked), std::move(plan)};
}

std::size_t cap_cell_length(Table& table, std::size_t max_chars) {
  std::size_t cut = 0;
  for (std::size_t c = 0; c < table.num_cols(); ++c) {
    for (std::size_t r = 0; r < table.num_rows(); ++r) {
      Cell value = table.cell(r, c);
      if (value && utf8_truncate(*value, max_chars)) {
        table.set_cell(r, c, std::move(value));
        ++cut;
      }
    }
  }
  return cut;
}

}  // namespace ldi
