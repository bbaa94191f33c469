#include "exfloquet/scan_result.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace exfl {

void ScanResult::add_column(std::string name, std::vector<double> values) {
  if (values.size() != axis.size())
    throw std::invalid_argument("column '" + name + "' has " + std::to_string(values.size()) +
                                " rows, axis has " + std::to_string(axis.size()));
  columns.emplace_back(std::move(name), std::move(values));
}

const std::vector<double>& ScanResult::column(std::string_view name) const {
  for (const auto& [key, values] : columns)
    if (key == name) return values;
  throw std::out_of_range("no column named '" + std::string(name) + "'");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return v;
}

std::string to_csv(const ScanResult& r) {
  std::string out = r.axis_name;
  for (const auto& [name, values] : r.columns) out += "," + name;
  out += '\n';
  for (std::size_t i = 0; i < r.axis.size(); ++i) {
    out += format_double(r.axis[i]);
    for (const auto& [name, values] : r.columns) {
      out += ',';
      out += format_double(values[i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    parts.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

ScanResult from_csv(std::string_view text) {
  ScanResult r;
  std::vector<std::vector<double>> cols;
  std::vector<std::string> names;
  bool header = true;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (header) {
      r.axis_name = std::string(fields.front());
      for (std::size_t j = 1; j < fields.size(); ++j) names.emplace_back(fields[j]);
      cols.resize(names.size());
      header = false;
      continue;
    }
    if (fields.size() != names.size() + 1) throw std::invalid_argument("ragged CSV row");
    r.axis.push_back(parse_double(fields[0]));
    for (std::size_t j = 0; j < names.size(); ++j) cols[j].push_back(parse_double(fields[j + 1]));
  }
  for (std::size_t j = 0; j < names.size(); ++j) r.add_column(names[j], std::move(cols[j]));
  return r;
}

nlohmann::json to_json(const ScanResult& r) {
  const auto arr = [](const std::vector<double>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) {
      if (std::isfinite(x))
        a.push_back(x);
      else
        a.push_back(nullptr);
    }
    return a;
  };
  nlohmann::json j;
  j["axis_name"] = r.axis_name;
  j["axis"] = arr(r.axis);
  nlohmann::json cols = nlohmann::json::object();
  nlohmann::json order = nlohmann::json::array();
  for (const auto& [name, values] : r.columns) {
    cols[name] = arr(values);
    order.push_back(name);
  }
  j["columns"] = cols;
  j["column_order"] = order;
  return j;
}

}  // namespace exfl
