#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace semanto {

/// Reduces a DOI spelling to its canonical form.
///
/// Surrounding whitespace and one leading `doi:`, `http(s)://doi.org/` or
/// `http(s)://dx.doi.org/` prefix (any case) are removed and the rest is
/// lowercased. The result must look like `10.<digits>/<suffix>`; anything
/// else yields nullopt.
std::optional<std::string> normalize_doi(std::string_view raw);

struct PaperRecord {
  std::string doi;
  std::string title;
  std::string abstract;
  std::uint64_t reader_count = 0;
  /// Provenance: false for neighbor-only records that supply text for the
  /// cited/citing sets but are not themselves evaluated.
  bool core = true;
  /// Title and abstract yield at least one token.
  bool has_text = false;
};

struct CitationEdge {
  std::string citing;
  std::string cited;

  friend bool operator==(const CitationEdge&, const CitationEdge&) = default;
  friend auto operator<=>(const CitationEdge&, const CitationEdge&) = default;
};

/// Per-source accounting: total == accepted + duplicate + malformed.
/// Self-citations are a subset of malformed.
struct IngestReport {
  std::size_t total = 0;
  std::size_t accepted = 0;
  std::size_t duplicate = 0;
  std::size_t malformed = 0;
  std::size_t self_citation = 0;

  friend bool operator==(const IngestReport&, const IngestReport&) = default;
};

struct EdgeIngest {
  std::vector<CitationEdge> edges;
  IngestReport report;
};

/// Papers keyed by normalized DOI plus the retained citation edges.
/// Immutable once built; edges may point at DOIs without a paper record.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<PaperRecord> papers, IngestReport paper_report);

  /// Returns a copy of this corpus carrying `edges`.
  Corpus with_edges(EdgeIngest edges) const&;
  Corpus with_edges(EdgeIngest edges) &&;

  /// In order of first appearance.
  const std::vector<PaperRecord>& papers() const { return papers_; }
  const std::vector<CitationEdge>& edges() const { return edges_; }
  const IngestReport& paper_report() const { return paper_report_; }
  const IngestReport& edge_report() const { return edge_report_; }

  const PaperRecord* find(std::string_view doi) const;
  bool contains(std::string_view doi) const { return find(doi) != nullptr; }

 private:
  std::vector<PaperRecord> papers_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<CitationEdge> edges_;
  IngestReport paper_report_;
  IngestReport edge_report_;
};

/// Reads line-delimited JSON paper records. The first record for a DOI wins;
/// per-record problems are counted in the report. Blank lines are skipped.
Corpus ingest_papers(std::istream& in);

/// Reads a `citing_doi,cited_doi` CSV. Malformed, self-referential and
/// repeated edges are dropped and counted. Throws FormatError on a wrong
/// header; an entirely empty stream is a valid empty edge list.
EdgeIngest ingest_edges(std::istream& in);

/// File-level convenience; throws IoError when a file cannot be opened.
Corpus ingest_files(const std::filesystem::path& papers, const std::filesystem::path& edges);

/// Canonical JSON form: papers and edges sorted by DOI, both ingest reports.
std::string serialize_corpus(const Corpus& corpus);
Corpus deserialize_corpus(std::string_view json);

}  // namespace semanto
