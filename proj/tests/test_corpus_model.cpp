#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "fieldscope/corpus_model.hpp"
#include "fieldscope/error.hpp"
#include "fieldscope/execution.hpp"
#include "fieldscope/synth.hpp"

using namespace fieldscope;

TEST(CorpusModel, CountsAndTotals) {
  const std::vector<TokenList> docs{{"a", "b", "a"}, {"c", "a"}};
  const auto m = build_model(docs);
  EXPECT_EQ(m.total_tokens(), 5u);
  EXPECT_EQ(m.count("a"), 3u);
  EXPECT_EQ(m.count("z"), 0u);
  EXPECT_EQ(m.v_available(), 3u);
}

TEST(CorpusModel, MergeIsOrderIndependent) {
  FrequencyModel x;
  x.add("a", 2);
  x.add("b");
  FrequencyModel y;
  y.add("b", 4);
  y.add("c");
  const std::vector<FrequencyModel> xy{x, y};
  const std::vector<FrequencyModel> yx{y, x};
  EXPECT_EQ(merge(xy).sorted_entries(), merge(yx).sorted_entries());
  EXPECT_EQ(merge(xy).total_tokens(), 8u);
}

TEST(CorpusModel, TopVCutoff) {
  FrequencyModel m;
  m.add("a", 6);
  m.add("b", 3);
  m.add("c", 1);
  const auto pv = top_v_probabilities(m, 2);
  EXPECT_EQ(pv.support, (std::vector<std::string>{"a", "b"}));
  EXPECT_DOUBLE_EQ(pv.probs[0], 2.0 / 3.0);
  const auto raw = top_v_probabilities(m, 2, CutoffMode::raw);
  EXPECT_DOUBLE_EQ(raw.probs[0], 0.6);
  EXPECT_FALSE(raw.normalized);
  try {
    top_v_probabilities(m, 4);
    FAIL();
  } catch (const InsufficientVocabulary& e) {
    EXPECT_EQ(e.available(), 3u);
    EXPECT_EQ(e.required(), 4u);
  }
}

TEST(CorpusModel, TopVBreaksTiesByWord) {
  FrequencyModel m;
  m.add("b", 5);
  m.add("a", 5);
  m.add("c", 1);
  EXPECT_EQ(top_v_probabilities(m, 1).support, std::vector<std::string>{"a"});
}

TEST(CorpusModel, ProbabilitiesSumToOne) {
  const auto docs = synth::abstracts(200, 80, 5);
  const auto m = count_documents(docs, PipelineConfig{});
  for (std::size_t v : {10u, 100u, 1000u}) {
    const auto pv = top_v_probabilities(m, v);
    EXPECT_NEAR(std::accumulate(pv.probs.begin(), pv.probs.end(), 0.0), 1.0, 1e-12);
  }
}

TEST(CorpusModel, ParallelCountMatchesSerial) {
  const auto docs = synth::abstracts(500, 60, 9);
  const PipelineConfig cfg;
  const auto serial = count_documents(docs, cfg, Execution::serial);
  set_worker_count(4);
  const auto parallel = count_documents(docs, cfg, Execution::parallel);
  set_worker_count(0);
  EXPECT_EQ(serial.sorted_entries(), parallel.sorted_entries());
  EXPECT_EQ(serial.total_tokens(), parallel.total_tokens());
}

TEST(CorpusModel, SelfDissimilarity) {
  std::vector<TokenList> docs;
  const auto texts = synth::abstracts(200, 80, 11);
  const PipelineConfig cfg;
  for (const auto& d : texts) docs.push_back(normalize(d.title, d.abstract, cfg));
  const auto s = self_dissimilarity(docs, 50, 10, 3);
  EXPECT_EQ(s.values.size(), 10u);
  EXPECT_GT(s.mean, 0.0);
  EXPECT_LT(s.mean, 0.2);
  EXPECT_EQ(s.values, self_dissimilarity(docs, 50, 10, 3).values);
  const auto one = self_dissimilarity(docs, 50, 1, 3);
  EXPECT_TRUE(one.degenerate);
  EXPECT_EQ(one.relative_std, 0.0);
}

TEST(CorpusModel, FileRoundTrip) {
  FrequencyModel m;
  m.add("alpha", 7);
  m.add("beta", 2);
  std::stringstream s;
  write_model(s, m, {"1.1", "1991:2014"});
  ModelFileHeader h;
  const auto back = read_model(s, &h);
  EXPECT_EQ(back.sorted_entries(), m.sorted_entries());
  EXPECT_EQ(h.field, "1.1");
  EXPECT_EQ(h.window, "1991:2014");
}

TEST(CorpusModel, FileWithWrongTotalRejected) {
  std::istringstream in("# field=x\n# window=1991:2014\n# total_tokens=5\nalpha\t2\n");
  EXPECT_THROW(read_model(in), Error);
}
