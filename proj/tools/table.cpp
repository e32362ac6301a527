#include "table.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace quench::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Table::param(const std::string& key, double value) { params.emplace_back(key, format_number(value)); }

void Table::diagnostic(const std::string& key, double value) { diagnostics.emplace_back(key, format_number(value)); }

namespace {

// RFC 4180 quoting for text cells that need it.
std::string cell_text(const Cell& c) {
  if (const double* v = std::get_if<double>(&c)) return format_number(*v);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const double* v = std::get_if<double>(&c)) {
    if (std::isfinite(*v)) return *v;
    return format_number(*v);
  }
  return std::get<std::string>(c);
}

}  // namespace

void write_csv(std::ostream& os, const Table& table) {
  for (const auto& [k, v] : table.params) os << "# " << k << " = " << v << '\n';
  for (const auto& [k, v] : table.diagnostics) os << "# diagnostic " << k << " = " << v << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table) {
  nlohmann::ordered_json j;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.params) j["params"][k] = v;
  j["columns"] = table.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    j["rows"].push_back(std::move(r));
  }
  j["diagnostics"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.diagnostics) j["diagnostics"][k] = v;
  os << j.dump(2) << '\n';
}

void write_table(std::ostream& os, const Table& table, Format format) {
  if (format == Format::json)
    write_json(os, table);
  else
    write_csv(os, table);
}

}  // namespace quench::cli
