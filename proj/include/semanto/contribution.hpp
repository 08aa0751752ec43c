#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>

#include "semanto/corpus.hpp"
#include "semanto/graph.hpp"
#include "semanto/metric_table.hpp"
#include "semanto/textmodel.hpp"

namespace semanto {

/// Normalized tf-idf vectors of every text-bearing paper whose vector is
/// non-empty. Papers missing here are treated as text-free.
using VectorIndex = std::unordered_map<std::string, DocumentVector>;

VectorIndex build_vectors(const Corpus& corpus, const VocabularyStats& stats);

enum class ContributionStatus {
  defined,
  no_cited_texts,
  no_citing_texts,
  paper_unknown,
};

std::string_view to_string(ContributionStatus status);

struct ContributionScore {
  ContributionStatus status = ContributionStatus::paper_unknown;
  double value = 0.0;          ///< meaningful only when defined
  std::size_t a_used = 0;      ///< cited papers with a vector
  std::size_t b_used = 0;      ///< citing papers with a vector
  std::size_t pair_count = 0;  ///< a_used * b_used

  bool defined() const { return status == ContributionStatus::defined; }
};

/// Mean semantic distance between the papers `p` cites and the papers
/// citing `p`, over every (cited, citing) pair with vectors on both sides.
///
/// Only neighbors present in `vectors` take part, and p never appears in
/// its own sets. A paper in both sets contributes on both sides.
/// The status is paper_unknown when p has no edges at all, otherwise
/// no_cited_texts / no_citing_texts when the respective set is empty.
///
/// The mean is evaluated as 1 - <sum A, sum B> / (|A| |B|), which equals the
/// pairwise average because cosine is bilinear in normalized vectors.
ContributionScore contribution(std::string_view p, const CitationGraph& graph, const VectorIndex& vectors);

/// One row per core paper of `corpus`, ascending by DOI.
MetricTable contribution_all(const CitationGraph& graph, const VectorIndex& vectors, const Corpus& corpus);

}  // namespace semanto
