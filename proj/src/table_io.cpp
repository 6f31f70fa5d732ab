#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <fmt/core.h>
#include <json.hpp>

#include "zeno/table.hpp"

namespace zeno {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string cell_text(const Cell& cell) {
  return std::visit(Overloaded{
                        [](std::monostate) { return std::string{}; },
                        [](std::int64_t v) { return std::to_string(v); },
                        [](double v) { return format_number(v); },
                        [](const std::string& s) { return s; },
                    },
                    cell);
}

}  // namespace

void Table::add_meta(std::string key, std::string value) {
  meta.emplace_back(std::move(key), std::move(value));
}

std::string Table::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) return v;
  }
  return {};
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::out_of_range("no column named " + name);
}

double Table::number(std::size_t row, std::size_t col) const {
  const Cell& cell = rows.at(row).at(col);
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
  return std::numeric_limits<double>::quiet_NaN();
}

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

void write_csv(std::ostream& os, const Table& table) {
  for (const auto& [k, v] : table.meta) os << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table) {
  nlohmann::ordered_json doc;
  doc["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.meta) doc["meta"][k] = v;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      std::visit(Overloaded{
                     [&](std::monostate) { out.push_back(nullptr); },
                     [&](std::int64_t v) { out.push_back(v); },
                     [&](double v) {
                       if (std::isfinite(v)) {
                         out.push_back(v);
                       } else {
                         out.push_back(nullptr);
                       }
                     },
                     [&](const std::string& s) { out.push_back(s); },
                 },
                 cell);
    }
    rows.push_back(std::move(out));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

std::vector<std::pair<std::string, std::string>> read_csv_meta(std::istream& is) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  while (is.peek() == '#' && std::getline(is, line)) {
    std::string body = line.substr(1);
    if (!body.empty() && body.front() == ' ') body.erase(0, 1);
    const auto eq = body.find('=');
    if (eq == std::string::npos) continue;
    out.emplace_back(body.substr(0, eq), body.substr(eq + 1));
  }
  return out;
}

}  // namespace zeno
