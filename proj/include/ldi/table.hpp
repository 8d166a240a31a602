#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ldi {

/// A cell is either text or MISSING (std::nullopt). MISSING != "".
using Cell = std::optional<std::string>;

/// Columnar, string-valued relation. Every column holds exactly num_rows()
/// cells and attribute names are unique and non-empty.
class Table {
 public:
  Table() = default;
  Table(std::vector<std::string> schema, std::vector<std::vector<Cell>> columns);

  static Table from_rows(std::vector<std::string> schema,
                         const std::vector<std::vector<Cell>>& rows);

  const std::vector<std::string>& schema() const noexcept { return schema_; }
  std::size_t num_rows() const noexcept { return rows_; }
  std::size_t num_cols() const noexcept { return schema_.size(); }

  std::optional<std::size_t> find(std::string_view attribute) const;
  /// Column index of attribute; throws SchemaError when absent.
  std::size_t index_of(std::string_view attribute) const;

  const Cell& cell(std::size_t row, std::size_t col) const { return columns_[col][row]; }
  const Cell& cell(std::size_t row, std::string_view attribute) const {
    return columns_[index_of(attribute)][row];
  }
  const std::vector<Cell>& column(std::size_t col) const { return columns_[col]; }

  void set_cell(std::size_t row, std::size_t col, Cell value);

  /// New table holding the given rows, in the given order.
  Table select_rows(std::span<const std::size_t> rows) const;

  std::size_t count_missing(std::size_t col) const;

  friend bool operator==(const Table&, const Table&) = default;

 private:
  std::vector<std::string> schema_;
  std::vector<std::vector<Cell>> columns_;
  std::size_t rows_ = 0;
};

struct CsvOptions {
  /// Unquoted fields equal to one of these load as MISSING. Quoted fields are
  /// always kept verbatim, which is what lets "" and "NA" round-trip.
  std::vector<std::string> missing_tokens{"", "NA", "N/A", "null"};
  char delimiter = ',';
};

Table load_csv(std::istream& in, const CsvOptions& options = {});
Table load_csv(std::string_view text, const CsvOptions& options = {});
Table load_csv_file(const std::string& path, const CsvOptions& options = {});

void write_csv(std::ostream& out, const Table& table, const CsvOptions& options = {});
std::string to_csv(const Table& table, const CsvOptions& options = {});
void write_csv_file(const std::string& path, const Table& table,
                    const CsvOptions& options = {});

struct Group {
  std::string key;
  std::vector<std::size_t> rows;
};

/// Rows partitioned by the value of a target attribute. Groups are ordered by
/// first appearance; rows with a MISSING target form the worklist.
struct GroupIndex {
  std::string target;
  std::vector<Group> groups;
  std::vector<std::size_t> worklist;

  const Group* find(std::string_view key) const;
  std::size_t grouped_rows() const;
};

/// Exact, case-sensitive grouping unless fold_case is set, in which case keys
/// are compared after ASCII lower-casing (the first spelling seen is kept).
GroupIndex group_by_target(const Table& table, std::string_view target,
                           bool fold_case = false);

struct MaskedCell {
  std::size_t row;
  std::string value;
  friend bool operator==(const MaskedCell&, const MaskedCell&) = default;
};

struct MaskPlan {
  std::string target;
  double rate = 0.0;
  std::uint64_t seed = 0;
  std::vector<MaskedCell> masked;  // ascending by row

  std::string to_json() const;
  static MaskPlan from_json(std::string_view json);
  friend bool operator==(const MaskPlan&, const MaskPlan&) = default;
};

/// Hides round(rate * #non-missing target cells) target cells, chosen
/// uniformly with the given seed. Already-missing cells are never chosen.
std::pair<Table, MaskPlan> mask_cells(const Table& table, std::string_view target,
                                      double rate, std::uint64_t seed);

/// Truncates every cell to at most max_chars characters. Returns the number
/// of cells that were cut.
std::size_t cap_cell_length(Table& table, std::size_t max_chars);

}  // namespace ldi
