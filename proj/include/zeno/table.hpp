#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace zeno {

/// Empty cell, integer, floating point or text.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

/// Tabular result with ordered key=value metadata.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, std::string value);
  /// Value of the first metadata entry with `key`, or empty.
  std::string meta_value(const std::string& key) const;
  /// Column index by name; throws std::out_of_range.
  std::size_t column(const std::string& name) const;
  /// Numeric value of a cell (integers widened); NaN for empty or text.
  double number(std::size_t row, std::size_t col) const;
};

/// Floating point as 17 significant digits, "." separator.
std::string format_number(double value);

/// `# key=value` lines, the column-name row, then one line per row. LF endings.
void write_csv(std::ostream& os, const Table& table);
/// {"meta": {...}, "columns": [...], "rows": [[...], ...]}; empty cells are null.
void write_json(std::ostream& os, const Table& table);

/// Metadata block of a CSV produced by write_csv, in file order.
std::vector<std::pair<std::string, std::string>> read_csv_meta(std::istream& is);

}  // namespace zeno
