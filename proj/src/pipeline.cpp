#include "semanto/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "semanto/contribution.hpp"
#include "semanto/error.hpp"
#include "semanto/graph.hpp"
#include "semanto/metric_table.hpp"
#include "semanto/textmodel.hpp"

namespace semanto {

namespace {

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("failed writing " + path.string());
}

void format_line(std::ostringstream& out, const char* what, const IngestReport& r) {
  out << what << ": " << r.total << " read, " << r.accepted << " accepted, " << r.duplicate << " duplicate, "
      << r.malformed << " malformed";
  if (r.self_citation) out << " (" << r.self_citation << " self-citations)";
  out << '\n';
}

}  // namespace

std::string format_ingest_report(const IngestSummary& summary) {
  std::ostringstream out;
  format_line(out, "papers", summary.papers);
  format_line(out, "edges", summary.edges);
  return out.str();
}

IngestSummary cmd_ingest(const std::filesystem::path& papers, const std::filesystem::path& edges,
                         const std::filesystem::path& out_dir) {
  const Corpus corpus = ingest_files(papers, edges);
  ensure_dir(out_dir);
  IngestSummary summary{corpus.paper_report(), corpus.edge_report()};
  write_file(out_dir / kCorpusFile, serialize_corpus(corpus));
  write_file(out_dir / kIngestReportFile, format_ingest_report(summary));
  return summary;
}

ComputeSummary cmd_compute(const std::filesystem::path& corpus_path, const std::filesystem::path& out_dir) {
  const Corpus corpus = deserialize_corpus(read_file(corpus_path));
  const auto stats = build_vocabulary(corpus);
  const auto vectors = build_vectors(corpus, stats);
  const auto graph = CitationGraph::build(corpus.edges());
  const auto table = contribution_all(graph, vectors, corpus);

  ensure_dir(out_dir);
  std::ostringstream csv;
  write_metric_table(csv, table);
  write_file(out_dir / kMetricsFile, csv.str());

  ComputeSummary summary;
  summary.rows = table.size();
  for (const auto& row : table) {
    if (row.contribution) ++summary.defined;
  }
  summary.undefined = summary.rows - summary.defined;
  return summary;
}

AnalysisReport cmd_analyze(const std::filesystem::path& table_path, const std::filesystem::path& out_dir,
                           const AnalysisOptions& options) {
  std::istringstream in(read_file(table_path));
  const MetricTable table = read_metric_table(in);
  AnalysisReport report = analyze(table, options);

  ensure_dir(out_dir);
  write_file(out_dir / kReportFile, report_to_json(report));
  for (const auto& study : report.studies) {
    std::ostringstream csv;
    write_bucket_csv(csv, study);
    const std::string name = "fig_" + std::string(to_string(study.sort_metric)) + "_vs_" +
                             std::string(to_string(study.target_metric)) + ".csv";
    write_file(out_dir / name, csv.str());
  }
  for (const auto& [metric, hist] : report.histograms) {
    std::ostringstream csv;
    write_histogram_csv(csv, hist);
    write_file(out_dir / ("hist_" + std::string(to_string(metric)) + ".csv"), csv.str());
  }
  return report;
}

SynthCorpus cmd_synth(const SynthConfig& config, const std::filesystem::path& out_dir) {
  SynthCorpus corpus = generate(config);
  write_synth(corpus, out_dir);
  return corpus;
}

}  // namespace semanto
