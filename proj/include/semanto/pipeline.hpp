#pragma once

#include <cstddef>
#include <filesystem>

#include "semanto/analytics.hpp"
#include "semanto/corpus.hpp"
#include "semanto/synth.hpp"

namespace semanto {

// File-staged pipeline behind the `semanto` CLI:
//   ingest  -> corpus.json, ingest_report.txt
//   compute -> metrics.csv
//   analyze -> report.json, fig_<x>_vs_<y>.csv, hist_<metric>.csv
//   synth   -> papers.jsonl, edges.csv, manifest.json

inline constexpr const char* kCorpusFile = "corpus.json";
inline constexpr const char* kIngestReportFile = "ingest_report.txt";
inline constexpr const char* kMetricsFile = "metrics.csv";
inline constexpr const char* kReportFile = "report.json";

struct IngestSummary {
  IngestReport papers;
  IngestReport edges;
};

struct ComputeSummary {
  std::size_t rows = 0;
  std::size_t defined = 0;
  std::size_t undefined = 0;
};

IngestSummary cmd_ingest(const std::filesystem::path& papers, const std::filesystem::path& edges,
                         const std::filesystem::path& out_dir);

ComputeSummary cmd_compute(const std::filesystem::path& corpus, const std::filesystem::path& out_dir);

AnalysisReport cmd_analyze(const std::filesystem::path& table, const std::filesystem::path& out_dir,
                           const AnalysisOptions& options);

SynthCorpus cmd_synth(const SynthConfig& config, const std::filesystem::path& out_dir);

/// Human-readable ingest summary, as written to ingest_report.txt.
std::string format_ingest_report(const IngestSummary& summary);

}  // namespace semanto
