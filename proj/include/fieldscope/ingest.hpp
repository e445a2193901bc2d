#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fieldscope/taxonomy.hpp"

namespace fieldscope {

struct YearRange {
  int first = 1991;
  int last = 2014;

  bool contains(int year) const noexcept { return year >= first && year <= last; }
  friend auto operator<=>(const YearRange&, const YearRange&) = default;
};

// Parses "A:B" (or a single year "A").
YearRange parse_year_range(std::string_view text);
std::string format_year_range(const YearRange& r);

struct ArticleRecord {
  std::string id;
  int year = 0;
  std::string title;
  std::string abstract;
  std::string specialty;
};

struct IngestOptions {
  YearRange years;
  bool strict = false;
};

// Every non-blank input line lands in exactly one bucket.
struct IngestCounters {
  std::size_t lines = 0;
  std::size_t accepted = 0;
  std::size_t rejected_year = 0;
  std::size_t rejected_specialty = 0;
  std::size_t malformed = 0;
  std::size_t duplicate = 0;
  // Informational: accepted records with an empty abstract.
  std::size_t empty_abstract = 0;

  std::size_t rejected() const noexcept {
    return rejected_year + rejected_specialty + malformed + duplicate;
  }
};

// One JSON object per line:
//   {"id": "...", "year": 1999, "title": "...", "abstract": "...", "specialty": "..."}
// Records are streamed to `sink`. With a null taxonomy the specialty check is
// skipped. Malformed lines and duplicate ids are fatal in strict mode.
IngestCounters for_each_article(std::istream& in, const TaxonomyTree* taxonomy,
                                const IngestOptions& options,
                                const std::function<void(ArticleRecord&&)>& sink);

struct ArticleSet {
  std::vector<ArticleRecord> records;
  IngestCounters counters;
};

ArticleSet load_articles(const std::filesystem::path& path, const TaxonomyTree* taxonomy,
                         const IngestOptions& options = {});

struct CorpusKey {
  std::string field;
  YearRange window;

  friend auto operator<=>(const CorpusKey&, const CorpusKey&) = default;
};

// Groups article ids by their ancestor at `level` and by every window that
// contains the article's year. Ids keep input order inside a group.
std::map<CorpusKey, std::vector<std::string>> group_corpora(
    const std::vector<ArticleRecord>& records, const TaxonomyTree& taxonomy, Level level,
    const std::vector<YearRange>& windows);

struct CitationEdge {
  std::string citing;
  std::string cited;

  friend bool operator==(const CitationEdge&, const CitationEdge&) = default;
};

struct CitationCounters {
  std::size_t lines = 0;
  std::size_t emitted = 0;
  std::size_t dropped_unknown = 0;
  std::size_t malformed = 0;
};

// Two columns separated by tab, comma or spaces; '#' lines ignored. Only edges
// whose endpoints are both in `known_ids` are emitted.
CitationCounters for_each_citation(std::istream& in,
                                   const std::unordered_set<std::string>& known_ids,
                                   const std::function<void(CitationEdge&&)>& sink);

struct CitationSet {
  std::vector<CitationEdge> edges;
  CitationCounters counters;
};

CitationSet load_citations(const std::filesystem::path& path,
                           const std::unordered_set<std::string>& known_ids);

}  // namespace fieldscope
