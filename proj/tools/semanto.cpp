// semanto: ingest -> compute -> analyze pipeline plus synthetic corpora.
//
// Exit status: 0 success, 1 data error (e.g. no text-bearing papers, fewer
// rows than buckets), 2 usage error, 3 input-format error, 4 I/O error.

#include <iostream>

#include "CLI11.hpp"
#include "semanto/error.hpp"
#include "semanto/pipeline.hpp"

namespace {

enum ExitCode : int { kOk = 0, kDataError = 1, kUsage = 2, kFormat = 3, kIo = 4 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contribution scores and citation/readership comparison for publication corpora"};
  app.require_subcommand(1);

  std::string papers, edges, corpus, table, out;
  semanto::AnalysisOptions analysis;
  semanto::SynthConfig synth;

  auto* ingest = app.add_subcommand("ingest", "Merge paper records and citation edges into a corpus");
  ingest->add_option("--papers", papers, "Line-delimited JSON paper records")->required();
  ingest->add_option("--edges", edges, "citing_doi,cited_doi CSV")->required();
  ingest->add_option("--out", out, "Output directory")->required();

  auto* compute = app.add_subcommand("compute", "Compute the metric table from an ingested corpus");
  compute->add_option("--corpus", corpus, "corpus.json written by ingest")->required();
  compute->add_option("--out", out, "Output directory")->required();

  auto* analyze = app.add_subcommand("analyze", "Correlations, histograms and bucket studies");
  analyze->add_option("--table", table, "metrics.csv written by compute")->required();
  analyze->add_option("--out", out, "Output directory")->required();
  analyze->add_option("--buckets", analysis.bucket_count, "Buckets per study")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  analyze->add_flag("--exclude-zero-readers", analysis.exclude_zero_readers, "Drop rows with zero readers");
  analyze->add_flag("--log-transform", analysis.log_transform, "Correlate ln(1 + count) instead of raw counts");

  auto* gen = app.add_subcommand("synth", "Generate a synthetic corpus");
  gen->add_option("--out", out, "Output directory")->required();
  gen->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  gen->add_option("--n-core", synth.n_core, "Core papers")->capture_default_str();
  gen->add_option("--n-neighbors", synth.n_neighbors, "Neighbor-only papers")->capture_default_str();
  gen->add_option("--citation-alpha", synth.citation_alpha, "Power-law shape of in-degrees (> 1)")
      ->capture_default_str();
  gen->add_option("--reader-rho", synth.reader_rho, "Reader/citation dependence in [0, 1)")->capture_default_str();
  gen->add_option("--vocab-size", synth.vocab_size, "Vocabulary size")->capture_default_str();
  gen->add_option("--topics", synth.topic_count, "Latent topics")->capture_default_str();
  gen->add_option("--tokens-per-abstract", synth.tokens_per_abstract, "Abstract length in tokens")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*ingest) {
      auto summary = semanto::cmd_ingest(papers, edges, out);
      std::cout << semanto::format_ingest_report(summary);
    } else if (*compute) {
      auto summary = semanto::cmd_compute(corpus, out);
      std::cout << summary.rows << " rows, " << summary.defined << " defined contributions, " << summary.undefined
                << " undefined\n";
    } else if (*analyze) {
      auto report = semanto::cmd_analyze(table, out, analysis);
      for (const auto& c : report.correlations) {
        std::cout << "pearson(" << semanto::to_string(c.metric_x) << ", " << semanto::to_string(c.metric_y)
                  << ") = " << (c.r ? semanto::format_real(*c.r) : "undefined") << "  n=" << c.n << '\n';
      }
      std::cout << report.contribution_undefined << " rows without a defined contribution excluded\n";
    } else if (*gen) {
      try {
        synth.validate();
      } catch (const std::invalid_argument& e) {
        std::cerr << "semanto: " << e.what() << '\n';
        return kUsage;
      }
      auto corpus = semanto::cmd_synth(synth, out);
      std::cout << corpus.papers.size() << " papers, " << corpus.edges.size() << " edges, survival slope "
                << semanto::format_real(corpus.survival_slope) << '\n';
    }
  } catch (const semanto::IoError& e) {
    std::cerr << "semanto: " << e.what() << '\n';
    return kIo;
  } catch (const semanto::FormatError& e) {
    std::cerr << "semanto: " << e.what() << '\n';
    return kFormat;
  } catch (const std::invalid_argument& e) {
    // Precondition failures on otherwise well-formed input.
    std::cerr << "semanto: " << e.what() << '\n';
    return kDataError;
  }
  return kOk;
}
