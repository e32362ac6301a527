#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace quench::cli {

using Cell = std::variant<double, std::string>;

/// One run's output: resolved parameters, column names, rows and free-form
/// diagnostics. Serialized either as CSV with '#' metadata lines or as one
/// JSON object.
struct Table {
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> diagnostics;

  void param(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
  void param(const std::string& key, double value);
  void diagnostic(const std::string& key, const std::string& value) { diagnostics.emplace_back(key, value); }
  void diagnostic(const std::string& key, double value);
};

enum class Format { csv, json };

/// Shortest round-trip-safe fixed format: %.17g, with inf/-inf/nan spelled out.
std::string format_number(double v);

void write_csv(std::ostream& os, const Table& table);
void write_json(std::ostream& os, const Table& table);
void write_table(std::ostream& os, const Table& table, Format format);

}  // namespace quench::cli
