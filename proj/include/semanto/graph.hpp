#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semanto/corpus.hpp"

namespace semanto {

/// Directed citation graph over normalized DOIs.
///
/// cited_set(p) holds the publications p cites, citing_set(p) the
/// publications that cite p. Both are sorted and duplicate-free, and the
/// two directions mirror each other exactly.
class CitationGraph {
 public:
  CitationGraph() = default;

  /// Duplicate edges collapse; self-loops are ignored.
  static CitationGraph build(std::span<const CitationEdge> edges);

  std::span<const std::string> cited_set(std::string_view doi) const;
  std::span<const std::string> citing_set(std::string_view doi) const;

  /// In-degree; 0 for DOIs the graph has never seen.
  std::size_t citation_count(std::string_view doi) const { return citing_set(doi).size(); }

  /// True when the DOI is an endpoint of at least one edge.
  bool contains(std::string_view doi) const;

  std::size_t edge_count() const { return edge_count_; }

  const std::unordered_map<std::string, std::vector<std::string>>& out_edges() const { return out_; }
  const std::unordered_map<std::string, std::vector<std::string>>& in_edges() const { return in_; }

 private:
  std::unordered_map<std::string, std::vector<std::string>> out_;
  std::unordered_map<std::string, std::vector<std::string>> in_;
  std::size_t edge_count_ = 0;
};

}  // namespace semanto
