#include "fieldscope/ingest.hpp"

#include <istream>

#include "fieldscope/delimited.hpp"
#include "fieldscope/error.hpp"
#include "fieldscope/io.hpp"
#include "json.hpp"

namespace fieldscope {

YearRange parse_year_range(std::string_view text) {
  text = delimited::trim(text);
  auto colon = text.find(':');
  YearRange r;
  try {
    if (colon == std::string_view::npos) {
      r.first = r.last = static_cast<int>(delimited::parse_integer(text));
    } else {
      r.first = static_cast<int>(delimited::parse_integer(text.substr(0, colon)));
      r.last = static_cast<int>(delimited::parse_integer(text.substr(colon + 1)));
    }
  } catch (const Error&) {
    fail(ErrorCategory::invalid_argument, "bad year range '" + std::string(text) + "', expected A:B");
  }
  if (r.first > r.last) {
    fail(ErrorCategory::invalid_argument, "year range '" + std::string(text) + "' is reversed");
  }
  return r;
}

std::string format_year_range(const YearRange& r) {
  return std::to_string(r.first) + ":" + std::to_string(r.last);
}

namespace {

std::optional<ArticleRecord> parse_record(const std::string& line) {
  auto j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  auto str = [&](const char* key, bool required) -> std::optional<std::string> {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
      if (required) return std::nullopt;
      return std::string{};
    }
    if (!it->is_string()) return std::nullopt;
    return it->get<std::string>();
  };
  ArticleRecord r;
  auto id = str("id", true);
  auto title = str("title", false);
  auto abstract = str("abstract", false);
  auto specialty = str("specialty", true);
  auto year = j.find("year");
  if (!id || id->empty() || !title || !abstract || !specialty || year == j.end() ||
      !year->is_number_integer()) {
    return std::nullopt;
  }
  r.id = std::move(*id);
  r.title = std::move(*title);
  r.abstract = std::move(*abstract);
  r.specialty = std::move(*specialty);
  r.year = year->get<int>();
  return r;
}

}  // namespace

IngestCounters for_each_article(std::istream& in, const TaxonomyTree* taxonomy,
                                const IngestOptions& options,
                                const std::function<void(ArticleRecord&&)>& sink) {
  IngestCounters c;
  std::unordered_set<std::string> seen;
  std::string line;
  while (delimited::read_line(in, line)) {
    if (delimited::trim(line).empty()) continue;
    ++c.lines;
    auto rec = parse_record(line);
    if (!rec) {
      if (options.strict) fail(ErrorCategory::parse, "malformed article record on line " + std::to_string(c.lines));
      ++c.malformed;
      continue;
    }
    if (!options.years.contains(rec->year)) {
      ++c.rejected_year;
      continue;
    }
    if (taxonomy && !taxonomy->is_specialty(rec->specialty)) {
      ++c.rejected_specialty;
      continue;
    }
    if (!seen.insert(rec->id).second) {
      if (options.strict) fail(ErrorCategory::duplicate_id, "duplicate article id '" + rec->id + "'");
      ++c.duplicate;
      continue;
    }
    ++c.accepted;
    if (rec->abstract.empty()) ++c.empty_abstract;
    sink(std::move(*rec));
  }
  return c;
}

ArticleSet load_articles(const std::filesystem::path& path, const TaxonomyTree* taxonomy,
                         const IngestOptions& options) {
  auto in = io::open_input(path);
  ArticleSet set;
  set.counters = for_each_article(in, taxonomy, options,
                                  [&](ArticleRecord&& r) { set.records.push_back(std::move(r)); });
  return set;
}

std::map<CorpusKey, std::vector<std::string>> group_corpora(
    const std::vector<ArticleRecord>& records, const TaxonomyTree& taxonomy, Level level,
    const std::vector<YearRange>& windows) {
  std::map<CorpusKey, std::vector<std::string>> groups;
  for (const auto& r : records) {
    const auto& field = taxonomy.ancestor_at(r.specialty, level);
    for (const auto& w : windows) {
      if (w.contains(r.year)) groups[CorpusKey{field, w}].push_back(r.id);
    }
  }
  return groups;
}

CitationCounters for_each_citation(std::istream& in,
                                   const std::unordered_set<std::string>& known_ids,
                                   const std::function<void(CitationEdge&&)>& sink) {
  CitationCounters c;
  std::string line;
  while (delimited::read_line(in, line)) {
    if (delimited::is_comment_or_blank(line)) continue;
    ++c.lines;
    auto cells = delimited::split_any(line, "\t, ");
    if (cells.size() != 2) {
      ++c.malformed;
      continue;
    }
    CitationEdge e{std::string(cells[0]), std::string(cells[1])};
    if (!known_ids.count(e.citing) || !known_ids.count(e.cited)) {
      ++c.dropped_unknown;
      continue;
    }
    ++c.emitted;
    sink(std::move(e));
  }
  return c;
}

CitationSet load_citations(const std::filesystem::path& path,
                           const std::unordered_set<std::string>& known_ids) {
  auto in = io::open_input(path);
  CitationSet set;
  set.counters = for_each_citation(in, known_ids,
                                   [&](CitationEdge&& e) { set.edges.push_back(std::move(e)); });
  return set;
}

}  // namespace fieldscope
