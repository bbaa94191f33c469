#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace exfl {

/// A table: one numeric axis plus named columns of equal length, with a JSON
/// metadata block that records everything needed to regenerate it.
struct ScanResult {
  std::string axis_name;
  std::vector<double> axis;
  std::vector<std::pair<std::string, std::vector<double>>> columns;
  nlohmann::json metadata = nlohmann::json::object();

  /// Appends a column; throws std::invalid_argument on a length mismatch.
  void add_column(std::string name, std::vector<double> values);
  const std::vector<double>& column(std::string_view name) const;
};

/// Shortest round-trip decimal form ("nan", "inf", "-inf" for non-finite).
std::string format_double(double v);
double parse_double(std::string_view text);

/// Comma-separated, header row, one line per axis value.
std::string to_csv(const ScanResult& r);
/// Inverse of to_csv for the numeric content (metadata is not in the CSV).
ScanResult from_csv(std::string_view text);
/// Columns mirrored as arrays; non-finite values become null.
nlohmann::json to_json(const ScanResult& r);

}  // namespace exfl
