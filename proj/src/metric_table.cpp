#include "semanto/metric_table.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include "csv.hpp"
#include "semanto/error.hpp"

namespace semanto {

namespace {

constexpr std::string_view kHeader = "doi,citations,readers,contribution";

std::uint64_t parse_count(const std::string& field, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size() || field.empty()) {
    throw FormatError("metric table line " + std::to_string(line_no) + ": bad count '" + field + "'");
  }
  return value;
}

double parse_real(const std::string& field, std::size_t line_no) {
  double value = 0.0;
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size()) {
    throw FormatError("metric table line " + std::to_string(line_no) + ": bad real '" + field + "'");
  }
  return value;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted.push_back('"');
    quoted.push_back(c);
  }
  quoted.push_back('"');
  return quoted;
}

}  // namespace

std::string format_real(double value) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::string(buf, static_cast<std::size_t>(n));
}

void write_metric_table(std::ostream& out, const MetricTable& table) {
  out << kHeader << '\n';
  for (const auto& row : table) {
    out << csv_field(row.doi) << ',' << row.citations << ',' << row.readers << ',';
    if (row.contribution) out << format_real(*row.contribution);
    out << '\n';
  }
}

MetricTable read_metric_table(std::istream& in) {
  MetricTable table;
  std::string line;
  if (!detail::read_line(in, line)) throw FormatError("metric table: empty input");
  detail::strip_bom(line);
  if (line != kHeader) throw FormatError("metric table: expected header '" + std::string(kHeader) + "'");
  std::size_t line_no = 1;
  while (detail::read_line(in, line)) {
    ++line_no;
    if (detail::is_blank(line)) continue;
    auto fields = detail::split_csv(line);
    if (!fields || fields->size() != 4) {
      throw FormatError("metric table line " + std::to_string(line_no) + ": expected 4 fields");
    }
    MetricRow row;
    row.doi = (*fields)[0];
    if (row.doi.empty()) throw FormatError("metric table line " + std::to_string(line_no) + ": empty doi");
    row.citations = parse_count((*fields)[1], line_no);
    row.readers = parse_count((*fields)[2], line_no);
    if (!(*fields)[3].empty()) row.contribution = parse_real((*fields)[3], line_no);
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace semanto
