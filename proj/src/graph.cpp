#include "semanto/graph.hpp"

#include <algorithm>

namespace semanto {

namespace {

std::span<const std::string> lookup(const std::unordered_map<std::string, std::vector<std::string>>& adj,
                                    std::string_view doi) {
  auto it = adj.find(std::string(doi));
  if (it == adj.end()) return {};
  return it->second;
}

void sort_unique(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

CitationGraph CitationGraph::build(std::span<const CitationEdge> edges) {
  CitationGraph g;
  for (const auto& e : edges) {
    if (e.citing == e.cited) continue;
    g.out_[e.citing].push_back(e.cited);
    g.in_[e.cited].push_back(e.citing);
  }
  for (auto& [doi, cited] : g.out_) {
    sort_unique(cited);
    g.edge_count_ += cited.size();
  }
  for (auto& [doi, citing] : g.in_) sort_unique(citing);
  return g;
}

std::span<const std::string> CitationGraph::cited_set(std::string_view doi) const { return lookup(out_, doi); }

std::span<const std::string> CitationGraph::citing_set(std::string_view doi) const { return lookup(in_, doi); }

bool CitationGraph::contains(std::string_view doi) const {
  const std::string key(doi);
  return out_.contains(key) || in_.contains(key);
}

}  // namespace semanto
