#include "semanto/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace semanto {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::citations:
      return "citations";
    case Metric::readers:
      return "readers";
    case Metric::contribution:
      return "contribution";
  }
  return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) {
  for (auto m : kAllMetrics) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

double metric_value(const MetricRow& row, Metric metric) {
  switch (metric) {
    case Metric::citations:
      return static_cast<double>(row.citations);
    case Metric::readers:
      return static_cast<double>(row.readers);
    case Metric::contribution:
      if (!row.contribution) throw std::invalid_argument("undefined contribution for " + row.doi);
      return *row.contribution;
  }
  throw std::invalid_argument("unknown metric");
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("pearson: need at least two points");

  const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("pearson: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationResult correlate(const MetricTable& rows, Metric x, Metric y, bool log_transform) {
  auto value = [log_transform](const MetricRow& row, Metric m) {
    const double v = metric_value(row, m);
    return (log_transform && m != Metric::contribution) ? std::log1p(v) : v;
  };
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(rows.size());
  ys.reserve(rows.size());
  for (const auto& row : rows) {
    xs.push_back(value(row, x));
    ys.push_back(value(row, y));
  }
  if (rows.size() < 2) throw std::invalid_argument("correlate: need at least two rows");
  const bool constant = std::ranges::all_of(xs, [&](double v) { return v == xs.front(); }) ||
                        std::ranges::all_of(ys, [&](double v) { return v == ys.front(); });
  if (constant) return {x, y, std::nullopt, rows.size()};
  return {x, y, pearson(xs, ys), rows.size()};
}

BucketStudy bucketize(const MetricTable& rows, Metric sort_metric, Metric target_metric, std::size_t k) {
  if (k == 0) throw std::invalid_argument("bucketize: bucket count must be positive");
  const std::size_t n = rows.size();
  if (n < k) {
    throw std::invalid_argument("bucketize: " + std::to_string(n) + " rows cannot fill " + std::to_string(k) +
                                " buckets");
  }

  struct Item {
    double x;
    double y;
    const std::string* doi;
  };
  std::vector<Item> items;
  items.reserve(n);
  for (const auto& row : rows) {
    items.push_back({metric_value(row, sort_metric), metric_value(row, target_metric), &row.doi});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.x != b.x) return a.x < b.x;
    return *a.doi < *b.doi;
  });

  BucketStudy study{sort_metric, target_metric, {}, 0.0};
  study.buckets.reserve(k);
  const std::size_t base = n / k;
  const std::size_t extra = n % k;
  std::size_t begin = 0;
  for (std::size_t b = 0; b < k; ++b) {
    const std::size_t size = base + (b < extra ? 1 : 0);
    const std::size_t end = begin + size;
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += items[i].y;
    const double mean = sum / static_cast<double>(size);
    double sq = 0.0;
    for (std::size_t i = begin; i < end; ++i) sq += (items[i].y - mean) * (items[i].y - mean);
    study.buckets.push_back({b, size, items[begin].x, items[end - 1].x, mean, std::sqrt(sq / static_cast<double>(size))});
    begin = end;
  }
  double grand = 0.0;
  for (const auto& bucket : study.buckets) grand += bucket.y_mean;
  study.grand_mean = grand / static_cast<double>(k);
  return study;
}

void write_bucket_csv(std::ostream& out, const BucketStudy& study) {
  out << "bucket,x_min,x_max,y_mean,y_std,grand_mean\n";
  for (const auto& b : study.buckets) {
    out << b.index << ',' << format_real(b.x_min) << ',' << format_real(b.x_max) << ',' << format_real(b.y_mean)
        << ',' << format_real(b.y_std) << ',' << format_real(study.grand_mean) << '\n';
  }
}

Binning Binning::linear(double min, double max, std::size_t bins) { return {Scale::linear, min, max, bins}; }

Binning Binning::log2(double min, double max, std::size_t bins_per_doubling) {
  return {Scale::log2, min, max, bins_per_doubling};
}

std::vector<double> Binning::edges() const {
  if (!(min < max) || bins == 0 || !std::isfinite(min) || !std::isfinite(max)) {
    throw std::invalid_argument("binning: need finite min < max and at least one bin");
  }
  std::vector<double> out;
  if (scale == Scale::linear) {
    out.reserve(bins + 1);
    const double width = (max - min) / static_cast<double>(bins);
    for (std::size_t i = 0; i < bins; ++i) out.push_back(min + width * static_cast<double>(i));
    out.push_back(max);
    return out;
  }
  if (min < 1.0) throw std::invalid_argument("binning: log2 scale needs min >= 1");
  // Edges min * 2^(i / bins) up to the first one that reaches max.
  for (std::size_t i = 0;; ++i) {
    const double edge = min * std::exp2(static_cast<double>(i) / static_cast<double>(bins));
    out.push_back(edge);
    if (edge >= max) break;
  }
  return out;
}

std::size_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), underflow + overflow);
}

Histogram histogram(std::span<const double> values, const Binning& binning) {
  if (values.empty()) throw std::invalid_argument("histogram: no values");
  Histogram h;
  h.edges = binning.edges();
  h.counts.assign(h.edges.size() - 1, 0);
  for (double v : values) {
    if (std::isnan(v)) throw std::invalid_argument("histogram: NaN value");
    if (v < h.edges.front()) {
      ++h.underflow;
    } else if (v > h.edges.back()) {
      ++h.overflow;
    } else {
      auto it = std::upper_bound(h.edges.begin(), h.edges.end(), v);
      auto bin = static_cast<std::size_t>(std::distance(h.edges.begin(), it)) - 1;
      ++h.counts[std::min(bin, h.counts.size() - 1)];
    }
  }
  return h;
}

void write_histogram_csv(std::ostream& out, const Histogram& hist) {
  out << "bin,lo,hi,count\n";
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    out << i << ',' << format_real(hist.edges[i]) << ',' << format_real(hist.edges[i + 1]) << ',' << hist.counts[i]
        << '\n';
  }
}

namespace {

Binning default_binning(Metric metric, std::span<const double> values) {
  if (metric == Metric::contribution) return Binning::linear(0.0, 1.0, 20);
  const double top = *std::max_element(values.begin(), values.end());
  return Binning::log2(1.0, std::max(2.0, top), 1);
}

std::vector<double> column(const MetricTable& rows, Metric metric) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(metric_value(row, metric));
  return out;
}

}  // namespace

AnalysisReport analyze(const MetricTable& table, const AnalysisOptions& options) {
  if (table.empty()) throw std::invalid_argument("analyze: empty metric table");

  AnalysisReport report;
  report.options = options;
  report.rows_total = table.size();

  MetricTable rows;
  rows.reserve(table.size());
  for (const auto& row : table) {
    if (options.exclude_zero_readers && row.readers == 0) {
      ++report.zero_readers_excluded;
    } else {
      rows.push_back(row);
    }
  }
  report.rows_analyzed = rows.size();
  if (rows.empty()) throw std::invalid_argument("analyze: no rows left after excluding zero readers");

  MetricTable defined;
  for (const auto& row : rows) {
    if (row.contribution) defined.push_back(row);
  }
  report.contribution_defined = defined.size();
  report.contribution_undefined = rows.size() - defined.size();
  const bool with_contribution = !defined.empty();

  auto rows_for = [&](Metric a, Metric b) -> const MetricTable& {
    return (a == Metric::contribution || b == Metric::contribution) ? defined : rows;
  };

  const std::array<std::pair<Metric, Metric>, 3> pairs = {{
      {Metric::citations, Metric::readers},
      {Metric::citations, Metric::contribution},
      {Metric::readers, Metric::contribution},
  }};
  for (auto [x, y] : pairs) {
    if (y == Metric::contribution && !with_contribution) continue;
    report.correlations.push_back(correlate(rows_for(x, y), x, y, options.log_transform));
  }

  for (auto metric : kAllMetrics) {
    if (metric == Metric::contribution && !with_contribution) continue;
    auto values = column(metric == Metric::contribution ? defined : rows, metric);
    report.histograms.emplace_back(metric, histogram(values, default_binning(metric, values)));
  }

  for (auto x : kAllMetrics) {
    for (auto y : kAllMetrics) {
      if (x == y) continue;
      if ((x == Metric::contribution || y == Metric::contribution) && !with_contribution) continue;
      report.studies.push_back(bucketize(rows_for(x, y), x, y, options.bucket_count));
    }
  }
  return report;
}

std::string report_to_json(const AnalysisReport& report) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["options"] = {{"bucket_count", report.options.bucket_count},
                    {"exclude_zero_readers", report.options.exclude_zero_readers},
                    {"log_transform", report.options.log_transform}};
  doc["counts"] = {{"rows_total", report.rows_total},
                   {"zero_readers_excluded", report.zero_readers_excluded},
                   {"rows_analyzed", report.rows_analyzed},
                   {"contribution_defined", report.contribution_defined},
                   {"contribution_undefined", report.contribution_undefined}};

  auto& correlations = doc["correlations"] = ordered_json::array();
  for (const auto& c : report.correlations) {
    correlations.push_back(
        {{"metric_x", to_string(c.metric_x)}, {"metric_y", to_string(c.metric_y)}, {"n", c.n}, {"r", c.r ? ordered_json(*c.r) : ordered_json(nullptr)}});
  }

  auto& histograms = doc["histograms"] = ordered_json::array();
  for (const auto& [metric, h] : report.histograms) {
    histograms.push_back({{"metric", to_string(metric)},
                          {"edges", h.edges},
                          {"counts", h.counts},
                          {"underflow", h.underflow},
                          {"overflow", h.overflow}});
  }

  auto& studies = doc["bucket_studies"] = ordered_json::array();
  for (const auto& s : report.studies) {
    ordered_json buckets = ordered_json::array();
    for (const auto& b : s.buckets) {
      buckets.push_back({{"bucket", b.index},
                         {"size", b.size},
                         {"x_min", b.x_min},
                         {"x_max", b.x_max},
                         {"y_mean", b.y_mean},
                         {"y_std", b.y_std}});
    }
    studies.push_back({{"x", to_string(s.sort_metric)},
                       {"y", to_string(s.target_metric)},
                       {"grand_mean", s.grand_mean},
                       {"buckets", std::move(buckets)}});
  }
  return doc.dump(1) + "\n";
}

}  // namespace semanto
