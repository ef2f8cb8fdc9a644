#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "invprob/error.hpp"
#include "invprob/rational.hpp"

namespace invprob::cli {

using Cell = std::variant<Rational, double, std::int64_t, std::string>;

/// Result of running a scenario: named summary values plus one table of rows.
struct Report {
  std::string kind;
  std::vector<std::pair<std::string, Cell>> summary{};
  std::vector<std::string> columns{};
  std::vector<std::vector<Cell>> rows{};
};

enum class Format { Table, Json, Csv };

inline Format parse_format(std::string_view name) {
  if (name == "table") return Format::Table;
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  throw Error(ErrorKind::Validation, "field 'format': expected table, json or csv");
}

/// Shortest text for `x` at 12 significant digits, '.' decimal separator in every locale.
inline std::string format_real(double x) {
  if (x == 0) x = 0;  // no "-0"
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

inline double round_to_12(double x) {
  const std::string text = format_real(x);
  double y = x;
  std::from_chars(text.data(), text.data() + text.size(), y);
  return y;
}

inline std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Rational>)
          return invprob::to_string(v);
        else if constexpr (std::is_same_v<T, double>)
          return format_real(v);
        else if constexpr (std::is_same_v<T, std::int64_t>)
          return std::to_string(v);
        else
          return v;
      },
      c);
}

inline nlohmann::json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Rational>)
          return invprob::to_string(v);
        else if constexpr (std::is_same_v<T, double>)
          return round_to_12(v);
        else
          return v;
      },
      c);
}

inline std::string render_table(const Report& r) {
  std::string out;
  std::size_t key_width = 0;
  for (const auto& [key, value] : r.summary) key_width = std::max(key_width, key.size());
  for (const auto& [key, value] : r.summary)
    out += key + ":" + std::string(key_width - key.size() + 1, ' ') + cell_text(value) + "\n";
  if (r.columns.empty()) return out;
  if (!r.summary.empty()) out += "\n";

  std::vector<std::vector<std::string>> text{r.columns};
  for (const auto& row : r.rows) {
    text.emplace_back();
    for (const auto& c : row) text.back().push_back(cell_text(c));
  }
  std::vector<std::size_t> width(r.columns.size(), 0);
  for (const auto& line : text)
    for (std::size_t j = 0; j < line.size(); ++j) width[j] = std::max(width[j], line[j].size());
  for (const auto& line : text) {
    std::string row;
    for (std::size_t j = 0; j < line.size(); ++j) {
      row += line[j];
      if (j + 1 < line.size()) row += std::string(width[j] - line[j].size() + 2, ' ');
    }
    out += row + "\n";
  }
  return out;
}

inline std::string render_json(const Report& r) {
  nlohmann::ordered_json doc;
  doc["kind"] = r.kind;
  auto& summary = doc["summary"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : r.summary) summary[key] = cell_json(value);
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t j = 0; j < row.size(); ++j) obj[r.columns[j]] = cell_json(row[j]);
    rows.push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

inline std::string render_csv(const Report& r) {
  std::string out;
  for (std::size_t j = 0; j < r.columns.size(); ++j) out += (j ? "," : "") + csv_escape(r.columns[j]);
  out += "\n";
  for (const auto& row : r.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + csv_escape(cell_text(row[j]));
    out += "\n";
  }
  return out;
}

inline std::string render(const Report& r, Format format) {
  switch (format) {
    case Format::Table: return render_table(r);
    case Format::Json: return render_json(r);
    case Format::Csv: return render_csv(r);
  }
  return render_table(r);
}

}  // namespace invprob::cli
