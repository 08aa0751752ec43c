#include "semanto/textmodel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "semanto/corpus.hpp"

namespace semanto {

namespace {

void flush_token(std::string& current, std::size_t code_points, bool digits_only,
                 std::vector<std::string>& out) {
  if (code_points >= 2 && !digits_only) out.push_back(current);
  current.clear();
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t code_points = 0;
  bool digits_only = true;

  const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<std::int32_t>(text.size());
  std::int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    const bool is_digit = c >= 0 && u_isdigit(c);
    if (c >= 0 && (u_isalpha(c) || is_digit)) {
      const UChar32 lower = u_tolower(c);
      char buf[U8_MAX_LENGTH];
      std::int32_t n = 0;
      U8_APPEND_UNSAFE(reinterpret_cast<std::uint8_t*>(buf), n, lower);
      current.append(buf, static_cast<std::size_t>(n));
      ++code_points;
      digits_only = digits_only && is_digit;
    } else {
      flush_token(current, code_points, digits_only, tokens);
      code_points = 0;
      digits_only = true;
    }
  }
  flush_token(current, code_points, digits_only, tokens);
  return tokens;
}

std::string document_text(std::string_view title, std::string_view abstract) {
  std::string text;
  text.reserve(title.size() + abstract.size() + 1);
  text.append(title);
  text.push_back(' ');
  text.append(abstract);
  return text;
}

VocabularyStats VocabularyStats::build(std::span<const std::vector<std::string>> documents) {
  std::map<std::string, std::size_t, std::less<>> df;
  std::size_t docs = 0;
  std::vector<std::string_view> unique;
  for (const auto& tokens : documents) {
    if (tokens.empty()) continue;
    ++docs;
    unique.assign(tokens.begin(), tokens.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (auto term : unique) {
      auto it = df.find(term);
      if (it == df.end()) {
        df.emplace(std::string(term), 1);
      } else {
        ++it->second;
      }
    }
  }
  if (docs == 0) throw std::invalid_argument("vocabulary: no text-bearing documents");

  VocabularyStats stats;
  stats.doc_count_ = docs;
  stats.terms_.reserve(df.size());
  stats.doc_freq_.reserve(df.size());
  for (auto& [term, count] : df) {
    stats.index_.emplace(term, static_cast<TermId>(stats.terms_.size()));
    stats.terms_.push_back(term);
    stats.doc_freq_.push_back(count);
  }
  return stats;
}

std::size_t VocabularyStats::doc_freq(std::string_view term) const {
  auto found = id(term);
  return found ? doc_freq_[*found] : 0;
}

std::optional<TermId> VocabularyStats::id(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

DocumentVector DocumentVector::from_raw(std::vector<Entry> raw) {
  std::erase_if(raw, [](const Entry& e) { return !(e.weight > 0.0); });
  std::sort(raw.begin(), raw.end(), [](const Entry& a, const Entry& b) { return a.term < b.term; });
  double sum_sq = 0.0;
  for (const auto& e : raw) sum_sq += e.weight * e.weight;
  DocumentVector v;
  if (raw.empty()) return v;
  const double norm = std::sqrt(sum_sq);
  for (auto& e : raw) e.weight /= norm;
  v.entries_ = std::move(raw);
  return v;
}

double DocumentVector::weight(TermId term) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), term,
                             [](const Entry& e, TermId t) { return e.term < t; });
  return (it != entries_.end() && it->term == term) ? it->weight : 0.0;
}

DocumentVector vectorize(std::span<const std::string> tokens, const VocabularyStats& stats) {
  if (tokens.empty()) throw std::invalid_argument("vectorize: document has no text");
  std::map<TermId, std::size_t> tf;
  for (const auto& token : tokens) {
    auto id = stats.id(token);
    if (!id) throw std::invalid_argument("vectorize: term '" + token + "' not in vocabulary");
    ++tf[*id];
  }
  const double n = static_cast<double>(stats.doc_count());
  std::vector<DocumentVector::Entry> raw;
  raw.reserve(tf.size());
  for (auto [id, count] : tf) {
    const std::size_t df = stats.doc_freq(id);
    if (df == stats.doc_count()) continue;
    raw.push_back({id, static_cast<double>(count) * std::log(n / static_cast<double>(df))});
  }
  return DocumentVector::from_raw(std::move(raw));
}

VocabularyStats build_vocabulary(const Corpus& corpus) {
  std::vector<std::vector<std::string>> docs;
  docs.reserve(corpus.papers().size());
  for (const auto& paper : corpus.papers()) {
    if (paper.has_text) docs.push_back(tokenize(document_text(paper.title, paper.abstract)));
  }
  return VocabularyStats::build(docs);
}

DocumentVector vectorize(const PaperRecord& record, const VocabularyStats& stats) {
  if (!record.has_text) throw std::invalid_argument("vectorize: " + record.doi + " has no text");
  return vectorize(tokenize(document_text(record.title, record.abstract)), stats);
}

double cosine(const DocumentVector& u, const DocumentVector& v) {
  if (u.empty() || v.empty()) throw std::invalid_argument("cosine: empty document vector");
  // Merge over term-sorted entries; the summation order depends only on the
  // shared terms, so cosine(u, v) == cosine(v, u) bit for bit.
  auto a = u.entries();
  auto b = v.entries();
  double dot = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].term < b[j].term) {
      ++i;
    } else if (b[j].term < a[i].term) {
      ++j;
    } else {
      dot += a[i].weight * b[j].weight;
      ++i;
      ++j;
    }
  }
  return std::clamp(dot, 0.0, 1.0);
}

double distance(const DocumentVector& u, const DocumentVector& v) { return 1.0 - cosine(u, v); }

}  // namespace semanto
