#include "semanto/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"
#include "semanto/error.hpp"

namespace semanto {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

__extension__ using uint128 = unsigned __int128;

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Probability that a citer or reference is drawn from the cited paper's topic.
constexpr double kTopicAffinity = 0.8;
// Weight of the secondary topic among non-primary tokens.
constexpr double kSecondaryShare = 0.7;
constexpr std::size_t kTitleWords = 6;
constexpr std::uint64_t kMaxReferences = 4;
constexpr double kReaderScale = 3.0;

constexpr const char* kConsonants = "bdfgklmnprstvxz";
constexpr const char* kVowels = "aeiou";

// Distinct pronounceable word per index: base-75 syllables, at least two.
std::string word(std::size_t index) {
  std::string w;
  std::size_t x = index;
  std::size_t syllables = 0;
  do {
    const std::size_t s = x % 75;
    w.push_back(kConsonants[s / 5]);
    w.push_back(kVowels[s % 5]);
    x /= 75;
    ++syllables;
  } while (x > 0 || syllables < 2);
  return w;
}

std::string format_doi(const char* kind, std::size_t index) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "10.9999/%s.%07zu", kind, index);
  return buf;
}

struct TextSampler {
  std::size_t vocab;
  std::size_t topics;

  std::size_t topic_word(Xoshiro256& rng, std::size_t topic) const {
    const std::size_t members = (vocab - topic + topics - 1) / topics;
    return topic + topics * rng.below(members);
  }

  std::string title(Xoshiro256& rng, std::size_t topic) const {
    std::string out;
    for (std::size_t i = 0; i < kTitleWords; ++i) {
      std::string w = word(topic_word(rng, topic));
      w[0] = static_cast<char>(w[0] - 'a' + 'A');
      if (i) out.push_back(' ');
      out += w;
    }
    return out;
  }

  std::string abstract(Xoshiro256& rng, std::size_t topic, std::size_t secondary, double weight,
                       std::size_t length) const {
    std::string out;
    for (std::size_t i = 0; i < length; ++i) {
      const double u = rng.uniform();
      std::size_t w;
      if (u < weight) {
        w = topic_word(rng, topic);
      } else if (u < weight + (1.0 - weight) * kSecondaryShare) {
        w = topic_word(rng, secondary);
      } else {
        w = rng.below(vocab);
      }
      if (i) out.push_back(' ');
      out += word(w);
    }
    out.push_back('.');
    return out;
  }
};

// Draws `count` distinct members of [0, total) other than `self`. Candidates
// come from `pool` with probability kTopicAffinity, else uniformly.
// Dense requests fall back to a partial shuffle.
std::vector<std::size_t> draw_distinct(Xoshiro256& rng, std::size_t count, std::size_t self, std::size_t offset,
                                       std::size_t total, const std::vector<std::size_t>& pool) {
  std::vector<std::size_t> chosen;
  const std::size_t available = total - ((self >= offset && self < offset + total) ? 1 : 0);
  count = std::min(count, available);
  if (count == 0) return chosen;
  if (2 * count > available) {
    std::vector<std::size_t> all;
    for (std::size_t i = offset; i < offset + total; ++i) {
      if (i != self) all.push_back(i);
    }
    for (std::size_t i = 0; i < count; ++i) {
      std::swap(all[i], all[i + rng.below(all.size() - i)]);
    }
    all.resize(count);
    return all;
  }
  std::unordered_set<std::size_t> seen;
  while (chosen.size() < count) {
    std::size_t c;
    if (!pool.empty() && rng.uniform() < kTopicAffinity) {
      c = pool[rng.below(pool.size())];
    } else {
      c = offset + rng.below(total);
    }
    if (c == self || !seen.insert(c).second) continue;
    chosen.push_back(c);
  }
  return chosen;
}

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  std::uint64_t state = seed;
  for (auto& s : s_) s = splitmix64(state);
}

std::uint64_t Xoshiro256::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t Xoshiro256::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Xoshiro256::below: bound must be positive");
  // Lemire's multiply-shift with rejection.
  uint128 m = static_cast<uint128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<uint128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

void SynthConfig::validate() const {
  if (n_core == 0) throw std::invalid_argument("synth: n_core must be positive");
  if (!(citation_alpha > 1.0) || !std::isfinite(citation_alpha)) {
    throw std::invalid_argument("synth: citation_alpha must be > 1");
  }
  if (!(reader_rho >= 0.0 && reader_rho < 1.0)) throw std::invalid_argument("synth: reader_rho must lie in [0, 1)");
  if (topic_count == 0) throw std::invalid_argument("synth: topic_count must be positive");
  if (vocab_size < 2 * topic_count) throw std::invalid_argument("synth: vocab_size must be at least 2 * topic_count");
  if (tokens_per_abstract == 0) throw std::invalid_argument("synth: tokens_per_abstract must be positive");
}

SynthCorpus generate(const SynthConfig& config) {
  config.validate();
  Xoshiro256 rng(config.seed);
  const std::size_t n_core = config.n_core;
  const std::size_t total = n_core + config.n_neighbors;
  const TextSampler text{config.vocab_size, config.topic_count};

  SynthCorpus out;
  out.config = config;
  out.papers.resize(total);

  std::vector<std::vector<std::size_t>> all_by_topic(config.topic_count);
  std::vector<std::vector<std::size_t>> neighbors_by_topic(config.topic_count);
  for (std::size_t i = 0; i < total; ++i) {
    auto& p = out.papers[i];
    p.core = i < n_core;
    p.doi = p.core ? format_doi("core", i) : format_doi("nbr", i - n_core);
    p.topic = static_cast<std::uint32_t>(rng.below(config.topic_count));
    p.secondary_topic = static_cast<std::uint32_t>(rng.below(config.topic_count));
    const double weight = 0.4 + 0.5 * rng.uniform();
    p.title = text.title(rng, p.topic);
    p.abstract = text.abstract(rng, p.topic, p.secondary_topic, weight, config.tokens_per_abstract);
    all_by_topic[p.topic].push_back(i);
    if (!p.core) neighbors_by_topic[p.topic].push_back(i);
  }

  // In-degrees: floor of a Pareto variate with tail exponent alpha - 1.
  const std::uint64_t cap = total - 1;
  const double tail = config.citation_alpha - 1.0;
  std::vector<std::size_t> out_degree(total, 0);
  for (std::size_t i = 0; i < n_core; ++i) {
    const double u = 1.0 - rng.uniform();  // (0, 1]
    const double x = std::pow(u, -1.0 / tail);
    const std::uint64_t degree =
        x >= static_cast<double>(cap) ? cap : static_cast<std::uint64_t>(std::floor(x));
    auto citers = draw_distinct(rng, degree, i, 0, total, all_by_topic[out.papers[i].topic]);
    out.papers[i].planted_citations = citers.size();
    for (auto c : citers) {
      out.edges.push_back({out.papers[c].doi, out.papers[i].doi});
      ++out_degree[c];
    }
  }

  // References from core papers into the neighbor pool; neighbors carry no
  // planted in-degree, so these edges leave the core counts untouched.
  if (config.n_neighbors > 0) {
    for (std::size_t i = 0; i < n_core; ++i) {
      const std::uint64_t refs = rng.below(kMaxReferences + 1);
      auto targets = draw_distinct(rng, refs, i, n_core, config.n_neighbors,
                                   neighbors_by_topic[out.papers[i].topic]);
      for (auto t : targets) {
        out.edges.push_back({out.papers[i].doi, out.papers[t].doi});
        ++out_degree[i];
      }
    }
  }

  // Readers: rho * c_i + sqrt(1 - rho^2) * c_pi(i) for a random permutation pi.
  std::vector<std::size_t> perm(n_core);
  for (std::size_t i = 0; i < n_core; ++i) perm[i] = i;
  for (std::size_t i = n_core; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  const double noise = std::sqrt(1.0 - config.reader_rho * config.reader_rho);
  for (std::size_t i = 0; i < n_core; ++i) {
    const double own = static_cast<double>(out.papers[i].planted_citations);
    const double other = static_cast<double>(out.papers[perm[i]].planted_citations);
    out.papers[i].readers =
        static_cast<std::uint64_t>(std::llround(kReaderScale * (config.reader_rho * own + noise * other)));
  }

  std::vector<std::uint64_t> degrees;
  degrees.reserve(n_core);
  for (std::size_t i = 0; i < n_core; ++i) {
    degrees.push_back(out.papers[i].planted_citations);
    if (out.papers[i].planted_citations > 0 && out_degree[i] > 0) ++out.expected_defined;
  }
  out.survival_slope = survival_slope(degrees);
  return out;
}

double survival_slope(std::span<const std::uint64_t> degrees, std::size_t min_count) {
  std::vector<std::uint64_t> sorted(degrees.begin(), degrees.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::uint64_t k = 1;; k *= 2) {
    const auto at_least = static_cast<std::size_t>(sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), k));
    if (at_least < std::max<std::size_t>(min_count, 1)) break;
    xs.push_back(std::log(static_cast<double>(k)));
    ys.push_back(std::log(static_cast<double>(at_least) / n));
  }
  if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

std::string papers_jsonl(const SynthCorpus& corpus) {
  std::string out;
  for (const auto& p : corpus.papers) {
    nlohmann::ordered_json j;
    j["doi"] = p.doi;
    j["title"] = p.title;
    j["abstract"] = p.abstract;
    if (p.core) {
      j["reader_count"] = p.readers;
    } else {
      j["core"] = false;
    }
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

std::string edges_csv(const SynthCorpus& corpus) {
  std::string out = "citing_doi,cited_doi\n";
  for (const auto& e : corpus.edges) {
    out += e.citing;
    out.push_back(',');
    out += e.cited;
    out.push_back('\n');
  }
  return out;
}

std::string manifest_json(const SynthCorpus& corpus) {
  using nlohmann::ordered_json;
  const auto& c = corpus.config;
  ordered_json doc;
  doc["generator"] = "xoshiro256** seeded by splitmix64";
  doc["config"] = {{"seed", c.seed},
                   {"n_core", c.n_core},
                   {"n_neighbors", c.n_neighbors},
                   {"citation_alpha", c.citation_alpha},
                   {"reader_rho", c.reader_rho},
                   {"vocab_size", c.vocab_size},
                   {"topic_count", c.topic_count},
                   {"tokens_per_abstract", c.tokens_per_abstract}};
  doc["edges"] = corpus.edges.size();
  doc["survival_slope"] = corpus.survival_slope;
  doc["target_survival_slope"] = -(c.citation_alpha - 1.0);
  doc["expected_defined_contribution"] = corpus.expected_defined;
  auto& papers = doc["papers"] = ordered_json::array();
  for (const auto& p : corpus.papers) {
    ordered_json j;
    j["doi"] = p.doi;
    j["core"] = p.core;
    j["topic"] = p.topic;
    j["secondary_topic"] = p.secondary_topic;
    if (p.core) {
      j["citations"] = p.planted_citations;
      j["readers"] = p.readers;
    }
    papers.push_back(std::move(j));
  }
  return doc.dump(1) + "\n";
}

void write_synth(const SynthCorpus& corpus, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  auto write = [&](const char* name, const std::string& content) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw IoError("cannot write " + (dir / name).string());
    f << content;
    if (!f) throw IoError("failed writing " + (dir / name).string());
  };
  write("papers.jsonl", papers_jsonl(corpus));
  write("edges.csv", edges_csv(corpus));
  write("manifest.json", manifest_json(corpus));
}

}  // namespace semanto
