#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace semanto {

struct PaperRecord;
class Corpus;

using TermId = std::uint32_t;

/// Splits UTF-8 text into lowercase tokens.
///
/// Every code point that is neither a letter nor a decimal digit separates
/// tokens. Tokens shorter than two code points and tokens made only of
/// digits are dropped. Invalid UTF-8 sequences act as separators.
std::vector<std::string> tokenize(std::string_view text);

/// Text of a publication as seen by the model: title, a space, abstract.
std::string document_text(std::string_view title, std::string_view abstract);

/// Document frequencies over the text-bearing documents of a corpus.
/// Terms are numbered in ascending byte order, so ids are stable for a
/// given document set regardless of document order.
class VocabularyStats {
 public:
  /// Throws std::invalid_argument when no document contains a token.
  static VocabularyStats build(std::span<const std::vector<std::string>> documents);

  std::size_t doc_count() const { return doc_count_; }
  std::size_t term_count() const { return terms_.size(); }

  /// 0 for unseen terms.
  std::size_t doc_freq(std::string_view term) const;
  std::size_t doc_freq(TermId id) const { return doc_freq_[id]; }

  std::optional<TermId> id(std::string_view term) const;
  const std::string& term(TermId id) const { return terms_[id]; }

 private:
  std::size_t doc_count_ = 0;
  std::vector<std::string> terms_;
  std::vector<std::size_t> doc_freq_;
  std::unordered_map<std::string, TermId> index_;
};

/// Sparse, L2-normalized tf-idf vector with entries sorted by term id.
class DocumentVector {
 public:
  struct Entry {
    TermId term;
    double weight;
  };

  DocumentVector() = default;

  /// Normalizes `raw` (nonnegative weights, any order, unique terms).
  /// Zero weights are dropped; an all-zero input yields an empty vector.
  static DocumentVector from_raw(std::vector<Entry> raw);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::span<const Entry> entries() const { return entries_; }

  /// 0 when the term is absent.
  double weight(TermId term) const;

 private:
  std::vector<Entry> entries_;
};

/// tf(term) * ln(N / df(term)); terms with df == N vanish.
/// Throws std::invalid_argument for an empty token list.
DocumentVector vectorize(std::span<const std::string> tokens, const VocabularyStats& stats);

/// Statistics over every text-bearing paper of the corpus.
VocabularyStats build_vocabulary(const Corpus& corpus);

/// Throws std::invalid_argument when the record has no text.
DocumentVector vectorize(const PaperRecord& record, const VocabularyStats& stats);

/// Dot product of two normalized vectors, clamped to [0, 1].
/// Throws std::invalid_argument when either vector is empty.
double cosine(const DocumentVector& u, const DocumentVector& v);

/// 1 - cosine(u, v).
double distance(const DocumentVector& u, const DocumentVector& v);

}  // namespace semanto
