#include "semanto/corpus.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>

#include "json.hpp"

#include "csv.hpp"
#include "semanto/error.hpp"
#include "semanto/textmodel.hpp"

namespace semanto {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kWhitespace = " \t\r\n\f\v";

constexpr std::array<std::string_view, 5> kResolverPrefixes = {
    "https://dx.doi.org/", "http://dx.doi.org/", "https://doi.org/", "http://doi.org/", "doi:",
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(kWhitespace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kWhitespace);
  return s.substr(first, last - first + 1);
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool starts_with_nocase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (ascii_lower(s[i]) != prefix[i]) return false;
  }
  return true;
}

bool has_text(const PaperRecord& p) { return !tokenize(document_text(p.title, p.abstract)).empty(); }

constexpr const char* kCorpusFormat = "semanto-corpus/1";

ordered_json report_json(const IngestReport& r) {
  return ordered_json{{"total", r.total},
                      {"accepted", r.accepted},
                      {"duplicate", r.duplicate},
                      {"malformed", r.malformed},
                      {"self_citation", r.self_citation}};
}

IngestReport report_from_json(const nlohmann::json& j) {
  IngestReport r;
  r.total = j.at("total").get<std::size_t>();
  r.accepted = j.at("accepted").get<std::size_t>();
  r.duplicate = j.at("duplicate").get<std::size_t>();
  r.malformed = j.at("malformed").get<std::size_t>();
  r.self_citation = j.at("self_citation").get<std::size_t>();
  return r;
}

// Parses one record; nullopt means malformed.
std::optional<PaperRecord> parse_paper(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error&) {
    return std::nullopt;
  }
  if (!j.is_object()) return std::nullopt;

  auto doi_field = j.find("doi");
  if (doi_field == j.end() || !doi_field->is_string()) return std::nullopt;
  auto doi = normalize_doi(doi_field->get_ref<const std::string&>());
  if (!doi) return std::nullopt;

  PaperRecord paper;
  paper.doi = std::move(*doi);
  for (auto [key, target] : {std::pair{"title", &paper.title}, std::pair{"abstract", &paper.abstract}}) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) continue;
    if (!it->is_string()) return std::nullopt;
    *target = it->get<std::string>();
  }
  if (auto it = j.find("reader_count"); it != j.end() && !it->is_null()) {
    if (it->is_number_unsigned()) {
      paper.reader_count = it->get<std::uint64_t>();
    } else {
      return std::nullopt;  // negative, fractional or non-numeric
    }
  }
  if (auto it = j.find("core"); it != j.end() && !it->is_null()) {
    if (!it->is_boolean()) return std::nullopt;
    paper.core = it->get<bool>();
  }
  paper.has_text = has_text(paper);
  return paper;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

std::optional<std::string> normalize_doi(std::string_view raw) {
  std::string_view s = trim(raw);
  for (auto prefix : kResolverPrefixes) {
    if (starts_with_nocase(s, prefix)) {
      s = trim(s.substr(prefix.size()));
      break;
    }
  }
  std::string doi;
  doi.reserve(s.size());
  std::transform(s.begin(), s.end(), std::back_inserter(doi), ascii_lower);

  if (!doi.starts_with("10.")) return std::nullopt;
  const auto slash = doi.find('/');
  if (slash == std::string::npos || slash == 3 || slash + 1 == doi.size()) return std::nullopt;
  for (std::size_t i = 3; i < slash; ++i) {
    if (doi[i] < '0' || doi[i] > '9') return std::nullopt;
  }
  return doi;
}

Corpus::Corpus(std::vector<PaperRecord> papers, IngestReport paper_report)
    : papers_(std::move(papers)), paper_report_(paper_report) {
  index_.reserve(papers_.size());
  for (std::size_t i = 0; i < papers_.size(); ++i) {
    if (!index_.emplace(papers_[i].doi, i).second) {
      throw std::invalid_argument("corpus: duplicate doi " + papers_[i].doi);
    }
  }
}

Corpus Corpus::with_edges(EdgeIngest edges) const& {
  Corpus copy = *this;
  return std::move(copy).with_edges(std::move(edges));
}

Corpus Corpus::with_edges(EdgeIngest edges) && {
  edges_ = std::move(edges.edges);
  edge_report_ = edges.report;
  return std::move(*this);
}

const PaperRecord* Corpus::find(std::string_view doi) const {
  auto it = index_.find(std::string(doi));
  return it == index_.end() ? nullptr : &papers_[it->second];
}

Corpus ingest_papers(std::istream& in) {
  std::vector<PaperRecord> papers;
  std::set<std::string, std::less<>> seen;
  IngestReport report;
  std::string line;
  bool first = true;
  while (detail::read_line(in, line)) {
    if (first) {
      detail::strip_bom(line);
      first = false;
    }
    if (detail::is_blank(line)) continue;
    ++report.total;
    auto paper = parse_paper(line);
    if (!paper) {
      ++report.malformed;
    } else if (!seen.insert(paper->doi).second) {
      ++report.duplicate;
    } else {
      ++report.accepted;
      papers.push_back(std::move(*paper));
    }
  }
  if (in.bad()) throw IoError("error while reading papers");
  return Corpus(std::move(papers), report);
}

EdgeIngest ingest_edges(std::istream& in) {
  EdgeIngest result;
  auto& report = result.report;
  std::string line;

  // Header: the first non-blank line.
  bool have_header = false;
  while (detail::read_line(in, line)) {
    detail::strip_bom(line);
    if (detail::is_blank(line)) continue;
    auto header = detail::split_csv(line);
    if (!header || header->size() != 2 || trim((*header)[0]) != "citing_doi" ||
        trim((*header)[1]) != "cited_doi") {
      throw FormatError("edges: expected header 'citing_doi,cited_doi', got '" + line + "'");
    }
    have_header = true;
    break;
  }
  if (!have_header) return result;

  std::set<CitationEdge> seen;
  while (detail::read_line(in, line)) {
    if (detail::is_blank(line)) continue;
    ++report.total;
    auto fields = detail::split_csv(line);
    std::optional<std::string> citing;
    std::optional<std::string> cited;
    if (fields && fields->size() == 2) {
      citing = normalize_doi((*fields)[0]);
      cited = normalize_doi((*fields)[1]);
    }
    if (!citing || !cited) {
      ++report.malformed;
      continue;
    }
    if (*citing == *cited) {
      ++report.malformed;
      ++report.self_citation;
      continue;
    }
    CitationEdge edge{std::move(*citing), std::move(*cited)};
    if (!seen.insert(edge).second) {
      ++report.duplicate;
      continue;
    }
    ++report.accepted;
    result.edges.push_back(std::move(edge));
  }
  if (in.bad()) throw IoError("error while reading edges");
  return result;
}

Corpus ingest_files(const std::filesystem::path& papers, const std::filesystem::path& edges) {
  auto papers_in = open_input(papers);
  auto edges_in = open_input(edges);
  Corpus corpus = ingest_papers(papers_in);
  return std::move(corpus).with_edges(ingest_edges(edges_in));
}

std::string serialize_corpus(const Corpus& corpus) {
  std::vector<const PaperRecord*> papers;
  papers.reserve(corpus.papers().size());
  for (const auto& p : corpus.papers()) papers.push_back(&p);
  std::sort(papers.begin(), papers.end(), [](auto* a, auto* b) { return a->doi < b->doi; });

  std::vector<const CitationEdge*> edges;
  edges.reserve(corpus.edges().size());
  for (const auto& e : corpus.edges()) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](auto* a, auto* b) { return *a < *b; });

  ordered_json doc;
  doc["format"] = kCorpusFormat;
  doc["paper_report"] = report_json(corpus.paper_report());
  doc["edge_report"] = report_json(corpus.edge_report());
  auto& out_papers = doc["papers"] = ordered_json::array();
  for (const auto* p : papers) {
    out_papers.push_back(ordered_json{{"doi", p->doi},
                                      {"title", p->title},
                                      {"abstract", p->abstract},
                                      {"reader_count", p->reader_count},
                                      {"core", p->core}});
  }
  auto& out_edges = doc["edges"] = ordered_json::array();
  for (const auto* e : edges) out_edges.push_back(ordered_json::array({e->citing, e->cited}));
  return doc.dump(1) + "\n";
}

Corpus deserialize_corpus(std::string_view text) {
  try {
    auto doc = nlohmann::json::parse(text);
    if (doc.at("format").get<std::string>() != kCorpusFormat) {
      throw FormatError("corpus: unsupported format " + doc.at("format").dump());
    }
    std::vector<PaperRecord> papers;
    for (const auto& j : doc.at("papers")) {
      PaperRecord p;
      p.doi = j.at("doi").get<std::string>();
      p.title = j.at("title").get<std::string>();
      p.abstract = j.at("abstract").get<std::string>();
      p.reader_count = j.at("reader_count").get<std::uint64_t>();
      p.core = j.at("core").get<bool>();
      p.has_text = has_text(p);
      papers.push_back(std::move(p));
    }
    EdgeIngest edges;
    for (const auto& e : doc.at("edges")) {
      edges.edges.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>()});
    }
    edges.report = report_from_json(doc.at("edge_report"));
    return Corpus(std::move(papers), report_from_json(doc.at("paper_report"))).with_edges(std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("corpus: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("corpus: ") + e.what());
  }
}

}  // namespace semanto
