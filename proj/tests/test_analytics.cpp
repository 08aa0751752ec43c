#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "semanto/analytics.hpp"
#include "semanto/contribution.hpp"

using namespace semanto;

namespace {

MetricTable random_table(std::size_t n, std::uint64_t seed, double undefined_share = 0.0) {
  std::mt19937_64 rng(seed);
  std::geometric_distribution<int> counts(0.2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MetricTable t;
  for (std::size_t i = 0; i < n; ++i) {
    MetricRow r;
    r.doi = "10.1/" + std::to_string(1000000 + i);
    r.citations = static_cast<std::uint64_t>(counts(rng));
    r.readers = static_cast<std::uint64_t>(counts(rng));
    if (unit(rng) >= undefined_share) r.contribution = unit(rng);
    t.push_back(r);
  }
  return t;
}

}  // namespace

TEST_CASE("pearson closed forms") {
  std::vector<double> x, y, neg;
  for (int i = 1; i <= 100; ++i) {
    x.push_back(i);
    y.push_back(2.0 * i + 3.0);
    neg.push_back(-i);
  }
  CHECK(std::abs(pearson(x, y) - 1.0) < 1e-12);
  CHECK(std::abs(pearson(x, neg) + 1.0) < 1e-12);
}

TEST_CASE("pearson errors") {
  std::vector<double> a{1, 2, 3};
  std::vector<double> b{1, 2};
  std::vector<double> flat{4, 4, 4};
  CHECK_THROWS_AS(pearson(a, b), std::invalid_argument);
  CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{2}), std::invalid_argument);
  CHECK_THROWS_AS(pearson(a, flat), std::invalid_argument);
}

TEST_CASE("pearson matches the extended-precision oracle on a 10-point sample") {
  std::mt19937_64 rng(2016);
  std::normal_distribution<double> g(5.0, 3.0);
  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(g(rng));
    y.push_back(0.4 * x.back() + g(rng));
  }
  CHECK(std::abs(pearson(x, y) - oracle::pearson(x, y)) < 1e-10);
}

TEST_CASE("property: pearson symmetry and affine invariance") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> coef(0.1, 50.0);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<double> x, y;
    const int n = 2 + static_cast<int>(rng() % 200);
    for (int i = 0; i < n; ++i) {
      x.push_back(g(rng));
      y.push_back(g(rng) + 0.3 * x.back());
    }
    const double r = pearson(x, y);
    CHECK(r == pearson(y, x));
    CHECK(std::abs(r) <= 1.0);
    const double a = coef(rng);
    const double b = g(rng) * 100.0;
    std::vector<double> ax, nx;
    for (double v : x) {
      ax.push_back(a * v + b);
      nx.push_back(-a * v + b);
    }
    CHECK(std::abs(pearson(ax, y) - r) < 1e-10);
    CHECK(std::abs(pearson(nx, y) + r) < 1e-10);
  }
}

TEST_CASE("correlate applies the log transform to counts only") {
  auto table = random_table(300, 1);
  auto raw = correlate(table, Metric::citations, Metric::readers);
  auto logged = correlate(table, Metric::citations, Metric::readers, true);
  std::vector<double> x, y;
  for (const auto& r : table) {
    x.push_back(std::log1p(static_cast<double>(r.citations)));
    y.push_back(std::log1p(static_cast<double>(r.readers)));
  }
  CHECK(*logged.r == doctest::Approx(oracle::pearson(x, y)).epsilon(1e-10));
  CHECK(raw.n == 300);
  CHECK(raw.metric_x == Metric::citations);
}

TEST_CASE("correlate leaves r empty when a metric is constant") {
  auto t = random_table(20, 12);
  for (auto& r : t) r.citations = 3;
  auto c = correlate(t, Metric::citations, Metric::readers);
  CHECK_FALSE(c.r);
  CHECK(c.n == 20);
  CHECK_THROWS_AS(correlate(MetricTable(t.begin(), t.begin() + 1), Metric::readers, Metric::contribution),
                  std::invalid_argument);
}

TEST_CASE("bucket sizes follow the remainder rule") {
  auto forty = bucketize(random_table(40, 2), Metric::citations, Metric::readers, 20);
  REQUIRE(forty.buckets.size() == 20);
  for (const auto& b : forty.buckets) CHECK(b.size == 2);

  auto fortythree = bucketize(random_table(43, 3), Metric::citations, Metric::readers, 20);
  for (std::size_t i = 0; i < 20; ++i) CHECK(fortythree.buckets[i].size == (i < 3 ? 3u : 2u));

  auto five = bucketize(random_table(43, 3), Metric::readers, Metric::citations, 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(five.buckets[i].size == (i < 3 ? 9u : 8u));
}

TEST_CASE("bucketize errors") {
  auto t = random_table(10, 4);
  CHECK_THROWS_AS(bucketize(t, Metric::citations, Metric::readers, 20), std::invalid_argument);
  CHECK_THROWS_AS(bucketize(t, Metric::citations, Metric::readers, 0), std::invalid_argument);
  auto partial = random_table(50, 4, 0.5);
  CHECK_THROWS_AS(bucketize(partial, Metric::citations, Metric::contribution, 5), std::invalid_argument);
  CHECK_FALSE(parse_metric("downloads"));
  CHECK(parse_metric("readers") == Metric::readers);
}

TEST_CASE("bucketize matches a sort-and-slice oracle on 1000 rows") {
  auto t = random_table(1000, 5);
  auto study = bucketize(t, Metric::citations, Metric::contribution, 20);
  std::vector<std::tuple<double, std::string, double>> rows;
  for (const auto& r : t) rows.emplace_back(static_cast<double>(r.citations), r.doi, *r.contribution);
  auto ref = oracle::buckets(rows, 20);
  double grand = 0;
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(study.buckets[i].size == ref[i].size);
    CHECK(study.buckets[i].x_min == ref[i].x_min);
    CHECK(study.buckets[i].x_max == ref[i].x_max);
    CHECK(std::abs(study.buckets[i].y_mean - ref[i].mean) < 1e-12);
    CHECK(std::abs(study.buckets[i].y_std - ref[i].std) < 1e-12);
    grand += ref[i].mean;
  }
  CHECK(std::abs(study.grand_mean - grand / 20) < 1e-12);
}

TEST_CASE("property: bucket shift invariance and ordering") {
  for (std::uint64_t seed = 10; seed < 30; ++seed) {
    auto t = random_table(97 + seed, seed);
    auto base = bucketize(t, Metric::readers, Metric::contribution, 20);
    const double c = 0.37;
    MetricTable shifted = t;
    for (auto& r : shifted) *r.contribution += c;
    auto moved = bucketize(shifted, Metric::readers, Metric::contribution, 20);
    std::size_t total = 0;
    for (std::size_t i = 0; i < 20; ++i) {
      CHECK(std::abs(moved.buckets[i].y_mean - (base.buckets[i].y_mean + c)) < 1e-12);
      CHECK(std::abs(moved.buckets[i].y_std - base.buckets[i].y_std) < 1e-12);
      if (i > 0) {
        CHECK(base.buckets[i - 1].x_max <= base.buckets[i].x_min);
        CHECK(base.buckets[i - 1].size >= base.buckets[i].size);
        CHECK(base.buckets[i - 1].size - base.buckets[i].size <= 1);
      }
      total += base.buckets[i].size;
    }
    CHECK(total == t.size());
  }
}

TEST_CASE("histogram basics") {
  std::vector<double> v{0, 1, 2, 3};
  auto h = histogram(v, Binning::linear(0, 4, 4));
  CHECK(h.counts == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(h.underflow == 0);
  CHECK(h.overflow == 0);

  auto closed = histogram(std::vector<double>{4.0}, Binning::linear(0, 4, 4));
  CHECK(closed.counts.back() == 1);

  auto outside = histogram(std::vector<double>{10, 11, -1}, Binning::linear(0, 4, 4));
  CHECK(outside.overflow == 2);
  CHECK(outside.underflow == 1);
  CHECK(outside.total() == 3);
}

TEST_CASE("log2 binning") {
  auto edges = Binning::log2(1, 37, 1).edges();
  CHECK(edges == std::vector<double>{1, 2, 4, 8, 16, 32, 64});
  auto half = Binning::log2(1, 4, 2).edges();
  REQUIRE(half.size() == 5);
  CHECK(half[1] == doctest::Approx(std::sqrt(2.0)));
  auto h = histogram(std::vector<double>{0, 1, 1, 3, 40}, Binning::log2(1, 40, 1));
  CHECK(h.underflow == 1);
  CHECK(h.counts[0] == 2);
  CHECK(h.counts[1] == 1);
  CHECK(h.counts.back() == 1);
}

TEST_CASE("invalid binning") {
  std::vector<double> v{1.0};
  CHECK_THROWS_AS(histogram(v, Binning::linear(1, 1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(histogram(v, Binning::linear(0, 1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(histogram(v, Binning::log2(0.5, 8, 1)), std::invalid_argument);
  CHECK_THROWS_AS(histogram(std::vector<double>{}, Binning::linear(0, 1, 2)), std::invalid_argument);
}

TEST_CASE("property: histogram total equals input length") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.5, 0.4);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<double> v(1 + rng() % 500);
    for (auto& x : v) x = g(rng);
    auto h = histogram(v, Binning::linear(0, 1, 1 + rng() % 30));
    CHECK(h.total() == v.size());
  }
}

TEST_CASE("fixture citation counts have a decreasing log2 tail") {
  auto corpus = ingest_files(SEMANTO_FIXTURES "/papers.jsonl", SEMANTO_FIXTURES "/edges.csv");
  auto g = CitationGraph::build(corpus.edges());
  std::vector<double> citations;
  for (const auto& p : corpus.papers()) citations.push_back(static_cast<double>(g.citation_count(p.doi)));
  auto h = histogram(citations, Binning::log2(1, 64, 1));
  auto mode = std::max_element(h.counts.begin(), h.counts.end());
  for (auto it = mode; it + 1 != h.counts.end(); ++it) CHECK(*(it + 1) <= *it);
  CHECK(h.total() == 200);
}

TEST_CASE("analyze with no defined contribution keeps citation/reader statistics") {
  auto t = random_table(100, 6, 1.1);
  auto report = analyze(t, {});
  CHECK(report.contribution_defined == 0);
  CHECK(report.contribution_undefined == 100);
  REQUIRE(report.correlations.size() == 1);
  CHECK(report.correlations[0].metric_x == Metric::citations);
  CHECK(report.correlations[0].metric_y == Metric::readers);
  CHECK(report.histograms.size() == 2);
  CHECK(report.studies.size() == 2);
}

TEST_CASE("analyze runs all studies and is deterministic") {
  auto t = random_table(500, 7, 0.2);
  auto report = analyze(t, {});
  CHECK(report.correlations.size() == 3);
  CHECK(report.histograms.size() == 3);
  CHECK(report.studies.size() == 6);
  CHECK(report.contribution_defined + report.contribution_undefined == 500);
  for (const auto& s : report.studies) {
    std::size_t total = 0;
    for (const auto& b : s.buckets) total += b.size;
    const bool uses_contribution = s.sort_metric == Metric::contribution || s.target_metric == Metric::contribution;
    CHECK(total == (uses_contribution ? report.contribution_defined : 500u));
  }
  CHECK(report_to_json(report) == report_to_json(analyze(t, {})));
}

TEST_CASE("analyze option handling") {
  auto t = random_table(400, 8, 0.1);
  AnalysisOptions opts;
  opts.exclude_zero_readers = true;
  opts.bucket_count = 10;
  auto report = analyze(t, opts);
  std::size_t zeros = 0;
  for (const auto& r : t) zeros += r.readers == 0;
  CHECK(report.zero_readers_excluded == zeros);
  CHECK(report.rows_analyzed == 400 - zeros);
  CHECK(report.studies[0].buckets.size() == 10);
  CHECK_THROWS_AS(analyze(MetricTable{}, {}), std::invalid_argument);
}

TEST_CASE("bucket and histogram CSV layout") {
  auto t = random_table(40, 9);
  std::ostringstream csv;
  write_bucket_csv(csv, bucketize(t, Metric::citations, Metric::readers, 4));
  auto text = csv.str();
  CHECK(text.starts_with("bucket,x_min,x_max,y_mean,y_std,grand_mean\n0,"));
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
  std::ostringstream hist;
  write_histogram_csv(hist, histogram(std::vector<double>{0.25, 0.75}, Binning::linear(0, 1, 2)));
  CHECK(hist.str() == "bin,lo,hi,count\n0,0,0.5,1\n1,0.5,1,1\n");
}

TEST_CASE("metric table CSV round trip and errors") {
  auto t = random_table(50, 10, 0.3);
  for (auto& r : t) {
    if (r.contribution) r.contribution = std::stod(format_real(*r.contribution));
  }
  std::ostringstream out;
  write_metric_table(out, t);
  std::istringstream in(out.str());
  CHECK(read_metric_table(in) == t);
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  std::istringstream bad_header("doi,c,r\n");
  CHECK_THROWS(read_metric_table(bad_header));
  std::istringstream bad_row("doi,citations,readers,contribution\n10.1/a,x,1,\n");
  CHECK_THROWS(read_metric_table(bad_row));
}
