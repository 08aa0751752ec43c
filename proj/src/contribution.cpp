#include "semanto/contribution.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace semanto {

namespace {

struct SparseSum {
  std::vector<DocumentVector::Entry> entries;  // sorted by term, unnormalized
};

// Sum of the vectors of `dois` that exist in `vectors`, skipping `self`.
SparseSum sum_vectors(std::span<const std::string> dois, std::string_view self, const VectorIndex& vectors,
                      std::size_t& used) {
  std::vector<DocumentVector::Entry> all;
  used = 0;
  for (const auto& doi : dois) {
    if (doi == self) continue;
    auto it = vectors.find(doi);
    if (it == vectors.end()) continue;
    ++used;
    auto entries = it->second.entries();
    all.insert(all.end(), entries.begin(), entries.end());
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.term < b.term; });
  SparseSum sum;
  for (const auto& e : all) {
    if (!sum.entries.empty() && sum.entries.back().term == e.term) {
      sum.entries.back().weight += e.weight;
    } else {
      sum.entries.push_back(e);
    }
  }
  return sum;
}

double dot(const SparseSum& a, const SparseSum& b) {
  double total = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.entries.size() && j < b.entries.size()) {
    if (a.entries[i].term < b.entries[j].term) {
      ++i;
    } else if (b.entries[j].term < a.entries[i].term) {
      ++j;
    } else {
      total += a.entries[i].weight * b.entries[j].weight;
      ++i;
      ++j;
    }
  }
  return total;
}

}  // namespace

VectorIndex build_vectors(const Corpus& corpus, const VocabularyStats& stats) {
  VectorIndex index;
  for (const auto& paper : corpus.papers()) {
    if (!paper.has_text) continue;
    auto v = vectorize(paper, stats);
    if (!v.empty()) index.emplace(paper.doi, std::move(v));
  }
  return index;
}

std::string_view to_string(ContributionStatus status) {
  switch (status) {
    case ContributionStatus::defined:
      return "defined";
    case ContributionStatus::no_cited_texts:
      return "no_cited_texts";
    case ContributionStatus::no_citing_texts:
      return "no_citing_texts";
    case ContributionStatus::paper_unknown:
      return "paper_unknown";
  }
  return "unknown";
}

ContributionScore contribution(std::string_view p, const CitationGraph& graph, const VectorIndex& vectors) {
  ContributionScore score;
  if (!graph.contains(p)) return score;

  const SparseSum cited = sum_vectors(graph.cited_set(p), p, vectors, score.a_used);
  const SparseSum citing = sum_vectors(graph.citing_set(p), p, vectors, score.b_used);
  if (score.a_used == 0) {
    score.status = ContributionStatus::no_cited_texts;
    return score;
  }
  if (score.b_used == 0) {
    score.status = ContributionStatus::no_citing_texts;
    return score;
  }
  score.status = ContributionStatus::defined;
  score.pair_count = score.a_used * score.b_used;
  const double mean_similarity = dot(cited, citing) / static_cast<double>(score.pair_count);
  score.value = std::clamp(1.0 - mean_similarity, 0.0, 1.0);
  return score;
}

MetricTable contribution_all(const CitationGraph& graph, const VectorIndex& vectors, const Corpus& corpus) {
  std::vector<const PaperRecord*> core;
  for (const auto& paper : corpus.papers()) {
    if (paper.core) core.push_back(&paper);
  }
  std::sort(core.begin(), core.end(), [](auto* a, auto* b) { return a->doi < b->doi; });

  MetricTable table(core.size());
  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& paper = *core[i];
      auto& row = table[i];
      row.doi = paper.doi;
      row.citations = graph.citation_count(paper.doi);
      row.readers = paper.reader_count;
      auto score = contribution(paper.doi, graph, vectors);
      if (score.defined()) row.contribution = score.value;
    }
  };

  // Rows are independent and written in place, so the schedule cannot
  // affect the result.
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, core.size() / 512));
  if (workers <= 1) {
    fill(0, core.size());
    return table;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (core.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(core.size(), begin + chunk);
    if (begin < end) pool.emplace_back(fill, begin, end);
  }
  pool.clear();
  return table;
}

}  // namespace semanto
