#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semanto/metric_table.hpp"

namespace semanto {

enum class Metric { citations, readers, contribution };

inline constexpr std::array<Metric, 3> kAllMetrics = {Metric::citations, Metric::readers, Metric::contribution};

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view name);

/// Value of `metric` for `row`; throws std::invalid_argument for an
/// undefined contribution.
double metric_value(const MetricRow& row, Metric metric);

/// Pearson product-moment correlation, two-pass form, clamped to [-1, 1].
/// Throws std::invalid_argument on length mismatch, fewer than two points,
/// or a constant sequence.
double pearson(std::span<const double> x, std::span<const double> y);

struct CorrelationResult {
  Metric metric_x;
  Metric metric_y;
  std::optional<double> r;  ///< empty when either metric is constant
  std::size_t n = 0;
};

/// Pearson r between two metrics over `rows`. With `log_transform`, counts
/// (citations, readers) enter as ln(1 + value); contribution stays raw.
/// Throws std::invalid_argument with fewer than two rows.
CorrelationResult correlate(const MetricTable& rows, Metric x, Metric y, bool log_transform = false);

struct BucketSummary {
  std::size_t index = 0;
  std::size_t size = 0;
  double x_min = 0.0;
  double x_max = 0.0;
  double y_mean = 0.0;
  double y_std = 0.0;  ///< population standard deviation
};

struct BucketStudy {
  Metric sort_metric;
  Metric target_metric;
  std::vector<BucketSummary> buckets;
  double grand_mean = 0.0;  ///< mean of the bucket means
};

/// Sorts rows by (sort_metric, doi) and cuts them into k contiguous buckets;
/// the first n mod k buckets hold one extra row. Each bucket reports the
/// mean and population standard deviation of target_metric.
///
/// Every row must define both metrics. Throws std::invalid_argument when
/// k == 0 or there are fewer rows than buckets.
BucketStudy bucketize(const MetricTable& rows, Metric sort_metric, Metric target_metric, std::size_t k = 20);

/// `bucket,x_min,x_max,y_mean,y_std,grand_mean`
void write_bucket_csv(std::ostream& out, const BucketStudy& study);

struct Binning {
  enum class Scale { linear, log2 };

  Scale scale = Scale::linear;
  double min = 0.0;
  double max = 1.0;
  /// Total bins for linear; bins per doubling for log2.
  std::size_t bins = 1;

  static Binning linear(double min, double max, std::size_t bins);
  static Binning log2(double min, double max, std::size_t bins_per_doubling);

  /// Strictly increasing edges. Throws std::invalid_argument for an invalid
  /// binning (min >= max, no bins, log2 with min < 1).
  std::vector<double> edges() const;
};

/// Half-open bins [e_i, e_{i+1}); the last bin also takes e_last.
struct Histogram {
  std::vector<double> edges;
  std::vector<std::size_t> counts;
  std::size_t underflow = 0;
  std::size_t overflow = 0;

  std::size_t total() const;
};

/// Throws std::invalid_argument for empty input or an invalid binning.
Histogram histogram(std::span<const double> values, const Binning& binning);

/// `bin,lo,hi,count`
void write_histogram_csv(std::ostream& out, const Histogram& hist);

struct AnalysisOptions {
  std::size_t bucket_count = 20;
  bool exclude_zero_readers = false;
  bool log_transform = false;
};

struct AnalysisReport {
  AnalysisOptions options;
  std::size_t rows_total = 0;
  std::size_t zero_readers_excluded = 0;
  std::size_t rows_analyzed = 0;
  std::size_t contribution_defined = 0;
  std::size_t contribution_undefined = 0;
  std::vector<CorrelationResult> correlations;
  std::vector<std::pair<Metric, Histogram>> histograms;
  std::vector<BucketStudy> studies;
};

/// Runs the full comparison: three pairwise correlations, a histogram per
/// metric and a bucket study for every ordered metric pair. Rows with an
/// undefined contribution are left out of every contribution statistic; if
/// none is defined, only the citations/readers statistics are produced.
AnalysisReport analyze(const MetricTable& table, const AnalysisOptions& options = {});

std::string report_to_json(const AnalysisReport& report);

}  // namespace semanto
