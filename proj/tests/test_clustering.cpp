#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fieldscope/clustering.hpp"
#include "fieldscope/error.hpp"
#include "fieldscope/oracle.hpp"

using namespace fieldscope;

namespace {

DissimilarityMatrix random_matrix(std::mt19937_64& rng, std::size_t n, bool integer) {
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < n; ++k) labels.push_back("L" + std::to_string(k));
  DissimilarityMatrix m(labels);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, integer ? static_cast<double>(rng() % 3) : u(rng));
  }
  return m;
}

}  // namespace

TEST(Clustering, ThreeLeafExample) {
  DissimilarityMatrix m({"1", "2", "3"});
  m.set(0, 1, 0.1);
  m.set(0, 2, 0.5);
  m.set(1, 2, 0.7);
  const auto d = upgma(m);
  ASSERT_EQ(d.merges.size(), 2u);
  EXPECT_EQ(d.merges[0], (Merge{0, 1, 0.1, 3, 2}));
  EXPECT_EQ(d.merges[1], (Merge{2, 3, 0.6, 4, 3}));
  EXPECT_EQ(cut_at_percentile(d, 0.92), (std::vector<std::size_t>{0, 0, 1}));
  EXPECT_EQ(cut_at_percentile(d, 1.0), (std::vector<std::size_t>{0, 0, 0}));
  EXPECT_EQ(cut_at_percentile(d, 0.0), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Clustering, MatchesNaiveOracle) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 300; ++t) {
    const auto m = random_matrix(rng, 2 + rng() % 9, t % 2 == 0);
    std::vector<std::vector<double>> d(m.size(), std::vector<double>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) d[i][j] = m(i, j);
    const auto got = upgma(m);
    const auto ref = oracle::group_average(d, m.labels());
    ASSERT_EQ(got.merges.size(), ref.merges.size());
    for (std::size_t k = 0; k < got.merges.size(); ++k) {
      EXPECT_EQ(got.merges[k].a, ref.merges[k].a);
      EXPECT_EQ(got.merges[k].b, ref.merges[k].b);
      EXPECT_NEAR(got.merges[k].height, ref.merges[k].height, 1e-12);
    }
  }
}

TEST(Clustering, HeightsNonDecreasing) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 100; ++t) {
    const auto d = upgma(random_matrix(rng, 12, false));
    EXPECT_TRUE(d.monotone);
    for (std::size_t k = 1; k < d.merges.size(); ++k) EXPECT_GE(d.merges[k].height, d.merges[k - 1].height);
  }
}

TEST(Clustering, NearestRankRule) {
  DissimilarityMatrix m({"a", "b", "c", "d"});
  m.set(0, 1, 0.1);
  m.set(2, 3, 0.2);
  m.set(0, 2, 0.9);
  m.set(0, 3, 0.9);
  m.set(1, 2, 0.9);
  m.set(1, 3, 0.9);
  const auto d = upgma(m);
  EXPECT_DOUBLE_EQ(cut_threshold(d, 0.5, CutRule::fraction_of_max), 0.45);
  EXPECT_DOUBLE_EQ(cut_threshold(d, 0.5, CutRule::nearest_rank), 0.2);
  EXPECT_EQ(cut_at_percentile(d, 0.5, CutRule::nearest_rank), (std::vector<std::size_t>{0, 0, 1, 2}));
  EXPECT_EQ(cut_at_percentile(d, 0.5), (std::vector<std::size_t>{0, 0, 1, 1}));
}

TEST(Clustering, NewickRoundTrip) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    const auto d = upgma(random_matrix(rng, 2 + rng() % 10, t % 2 == 0));
    EXPECT_EQ(parse_newick(to_newick(d)), d);
  }
  DissimilarityMatrix two({"A", "B"});
  two.set(0, 1, 0.4);
  EXPECT_EQ(to_newick(upgma(two)), "(A:0.4[&&NHX:id=0],B:0.4[&&NHX:id=1])[&&NHX:id=2:h=0.4];");
}

TEST(Clustering, MergeTableRoundTrip) {
  std::mt19937_64 rng(24);
  const auto d = upgma(random_matrix(rng, 7, false));
  std::stringstream s;
  write_merge_table(s, d);
  EXPECT_EQ(read_merge_table(s), d);
}

TEST(Clustering, FlaggedCellRejected) {
  DissimilarityMatrix m({"a", "b"});
  m.set_error(0, 1, "degenerate");
  EXPECT_THROW(upgma(m), Error);
  EXPECT_THROW(parse_newick("(A,B"), Error);
}
