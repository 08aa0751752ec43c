#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace semanto {

/// One evaluated publication. `contribution` is empty when undefined.
struct MetricRow {
  std::string doi;
  std::uint64_t citations = 0;
  std::uint64_t readers = 0;
  std::optional<double> contribution;

  friend bool operator==(const MetricRow&, const MetricRow&) = default;
};

using MetricTable = std::vector<MetricRow>;

/// `%.12g`, the rendering used for every real in emitted CSVs.
std::string format_real(double value);

/// CSV with header `doi,citations,readers,contribution`; LF line endings.
void write_metric_table(std::ostream& out, const MetricTable& table);

/// Throws FormatError on a wrong header or an unparseable row.
MetricTable read_metric_table(std::istream& in);

}  // namespace semanto
