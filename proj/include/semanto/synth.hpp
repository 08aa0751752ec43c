#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "semanto/corpus.hpp"

namespace semanto {

/// xoshiro256** seeded through SplitMix64, as published by Blackman and
/// Vigna. Fixed here so synthetic corpora are identical on every platform
/// and can be reproduced from any language.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t s_[4];
};

struct SynthConfig {
  std::uint64_t seed = 42;
  std::size_t n_core = 2000;
  std::size_t n_neighbors = 2000;
  double citation_alpha = 2.5;
  double reader_rho = 0.35;
  std::size_t vocab_size = 2000;
  std::size_t topic_count = 20;
  std::size_t tokens_per_abstract = 60;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct SynthPaper {
  std::string doi;
  std::string title;
  std::string abstract;
  bool core = true;
  std::uint32_t topic = 0;
  std::uint32_t secondary_topic = 0;
  std::uint64_t readers = 0;
  /// Planted in-degree; always 0 for neighbors.
  std::uint64_t planted_citations = 0;
};

struct SynthCorpus {
  SynthConfig config;
  std::vector<SynthPaper> papers;  ///< core papers first
  std::vector<CitationEdge> edges;
  /// Least-squares slope of ln S(k) against ln k for the core in-degrees.
  double survival_slope = 0.0;
  /// Core papers with at least one reference and one citer.
  std::size_t expected_defined = 0;
};

/// Builds a corpus whose core in-degrees follow floor(Pareto(alpha - 1)),
/// i.e. P(K >= k) = k^-(alpha - 1), capped by the corpus size. Reader counts
/// blend each paper's citation count with the count of a randomly permuted
/// partner, weighted rho and sqrt(1 - rho^2). Text is drawn from topic
/// vocabularies and citing papers prefer the topic of the cited paper.
SynthCorpus generate(const SynthConfig& config);

/// Slope of ln P(K >= k) against ln k at k = 1, 2, 4, ... while at least
/// `min_count` degrees reach k. Returns NaN with fewer than two points.
double survival_slope(std::span<const std::uint64_t> degrees, std::size_t min_count = 10);

std::string papers_jsonl(const SynthCorpus& corpus);
std::string edges_csv(const SynthCorpus& corpus);
std::string manifest_json(const SynthCorpus& corpus);

/// Writes papers.jsonl, edges.csv and manifest.json into `dir`.
void write_synth(const SynthCorpus& corpus, const std::filesystem::path& dir);

}  // namespace semanto
