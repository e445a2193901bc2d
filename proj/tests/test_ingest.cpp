#include <gtest/gtest.h>

#include <sstream>

#include "fieldscope/error.hpp"
#include "fieldscope/ingest.hpp"
#include "fieldscope/taxonomy.hpp"

using namespace fieldscope;

namespace {

TaxonomyTree tree() {
  std::istringstream in(
      "1\tA\tdomain\t\n1.1\tB\tdiscipline\t1\n1.1.a\tC\tspecialty\t1.1\n1.1.b\tD\tspecialty\t1.1\n");
  return TaxonomyTree::parse(in);
}

IngestCounters ingest(const std::string& text, std::vector<ArticleRecord>& out, bool strict = false) {
  const auto t = tree();
  std::istringstream in(text);
  IngestOptions opts;
  opts.strict = strict;
  return for_each_article(in, &t, opts, [&](ArticleRecord&& r) { out.push_back(std::move(r)); });
}

}  // namespace

TEST(Ingest, CountersPartitionLines) {
  std::vector<ArticleRecord> got;
  const auto c = ingest(
      R"({"id":"a","year":1999,"title":"T","abstract":"X","specialty":"1.1.a"}
{"id":"b","year":1980,"title":"T","abstract":"X","specialty":"1.1.a"}
{"id":"c","year":2000,"title":"T","abstract":"X","specialty":"9.9"}
not json

{"id":"a","year":2001,"title":"T","abstract":"Y","specialty":"1.1.b"}
{"id":"d","year":2003,"title":"T","abstract":"","specialty":"1.1.b"}
)",
      got);
  EXPECT_EQ(c.lines, 6u);
  EXPECT_EQ(c.accepted, 2u);
  EXPECT_EQ(c.rejected_year, 1u);
  EXPECT_EQ(c.rejected_specialty, 1u);
  EXPECT_EQ(c.malformed, 1u);
  EXPECT_EQ(c.duplicate, 1u);
  EXPECT_EQ(c.empty_abstract, 1u);
  EXPECT_EQ(c.accepted + c.rejected(), c.lines);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0].abstract, "X");
}

TEST(Ingest, StrictModeFailsOnMalformed) {
  std::vector<ArticleRecord> got;
  EXPECT_THROW(ingest("{\"id\":1}\n", got, true), Error);
}

TEST(Ingest, YearRangeParsing) {
  EXPECT_EQ(parse_year_range("1991:2014"), (YearRange{1991, 2014}));
  EXPECT_EQ(parse_year_range("2000"), (YearRange{2000, 2000}));
  EXPECT_THROW(parse_year_range("2014:1991"), Error);
  EXPECT_EQ(format_year_range({1991, 2014}), "1991:2014");
}

TEST(Ingest, GroupsByAncestorAndWindow) {
  const auto t = tree();
  std::vector<ArticleRecord> recs{{"x", 1995, "", "", "1.1.a"}, {"y", 2005, "", "", "1.1.b"}};
  const auto groups = group_corpora(recs, t, Level::discipline, {{1991, 2014}, {2005, 2005}});
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ((groups.at({"1.1", {1991, 2014}})), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ((groups.at({"1.1", {2005, 2005}})), (std::vector<std::string>{"y"}));
}

TEST(Ingest, CitationsKeepKnownEndpoints) {
  std::istringstream in("# citing cited\na\tb\na,c\nb  a\nonly\n");
  std::vector<CitationEdge> edges;
  const auto c = for_each_citation(in, {"a", "b"}, [&](CitationEdge&& e) { edges.push_back(e); });
  EXPECT_EQ(c.emitted, 2u);
  EXPECT_EQ(c.dropped_unknown, 1u);
  EXPECT_EQ(c.malformed, 1u);
  EXPECT_EQ(edges[1], (CitationEdge{"b", "a"}));
}
