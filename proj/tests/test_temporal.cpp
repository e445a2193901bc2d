#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fieldscope/corpus_model.hpp"
#include "fieldscope/error.hpp"
#include "fieldscope/execution.hpp"
#include "fieldscope/temporal.hpp"

using namespace fieldscope;

namespace {

PairTimeSeries series(std::vector<std::pair<int, double>> pts) {
  PairTimeSeries s{"a", "b", {}};
  for (auto [y, v] : pts) s.points.push_back({y, v});
  return s;
}

}  // namespace

TEST(Temporal, MovingAverageTruncatesAtEdges) {
  const auto ma = moving_average(series({{2000, 1}, {2001, 2}, {2002, 6}, {2004, 4}}), 3);
  ASSERT_EQ(ma.points.size(), 4u);
  EXPECT_DOUBLE_EQ(ma.points[0].value, 1.5);
  EXPECT_DOUBLE_EQ(ma.points[1].value, 3.0);
  EXPECT_DOUBLE_EQ(ma.points[2].value, 4.0);
  EXPECT_DOUBLE_EQ(ma.points[3].value, 4.0);
  EXPECT_THROW(moving_average(ma, 2), Error);
}

TEST(Temporal, NuEndpointsAndFilters) {
  const auto s = series({{1990, 0.8}, {1991, 0.7}, {2003, 0.5}, {2014, 0.2}});
  const auto n = nu(s, 1991, 2014);
  EXPECT_EQ(n.t_start, 1990);
  EXPECT_DOUBLE_EQ(n.nu, (0.2 - 0.8) / 23.0);
  EXPECT_EQ(nu(s, 1992, 2014, 0).t_start, 1991);
  try {
    nu(s, 2003, 2014, 12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::short_history);
  }
  try {
    nu(s, 1995, 2013, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::missing_endpoint);
  }
}

TEST(Temporal, TelescopingSumIsExact) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    PairTimeSeries s{"a", "b", {}};
    for (int y = 1990; y <= 2014; ++y) s.points.push_back({y, u(rng) * std::pow(10.0, static_cast<int>(rng() % 6))});
    EXPECT_EQ(nu(s, 1991, 2014).nu, nu_yearly_sum(s, 1991, 2014));
  }
}

TEST(Temporal, ComputeNusCountsFilteredPairs) {
  std::map<FieldPair, PairTimeSeries> all;
  all[{"a", "b"}] = series({{1991, 0.5}, {2014, 0.4}});
  all[{"a", "c"}] = series({{2010, 0.5}, {2014, 0.4}});
  all[{"b", "c"}] = series({{1995, 0.5}});
  const auto sel = compute_nus(all, 1991, 2014, 12);
  EXPECT_EQ(sel.values.size(), 1u);
  EXPECT_EQ(sel.short_history, 2u);
}

TEST(Temporal, MeanTestsMatchReference) {
  // scipy.stats.ttest_1samp and wilcoxon on the same values.
  const std::vector<double> x{0.012, -0.004, 0.021, 0.008, -0.011, 0.017, 0.005, -0.002, 0.014, 0.009};
  const auto t = one_sample_t_test(x);
  EXPECT_NEAR(t.statistic, 2.176055918687612, 1e-12);
  EXPECT_NEAR(t.p_value, 0.05754305810694726, 1e-10);
  const auto w = wilcoxon_signed_rank(x);
  EXPECT_EQ(w.statistic, 46.0);
  EXPECT_TRUE(w.exact);
  EXPECT_NEAR(w.p_value, 0.064453125, 1e-15);
}

TEST(Temporal, WilcoxonNormalApproximationWithTies) {
  const std::vector<double> x{2.3, -2.3, 0.7, -0.3, -0.2, 0.1, -1.7, 0.1, -0.6, 3.6, 0.5, -0.1, 0.0, -0.4,
                              -0.8, -0.1, 0.8, 0.1, 1.3, 0.1, 0.3, 1.8, 0.8, -0.2, 0.1, 0.8, 2.2, 0.0,
                              0.1, 1.3, -0.6, 0.0, 1.2, 0.9, 0.4, 1.0, -2.5, 1.3, -0.7, -1.4};
  const auto w = wilcoxon_signed_rank(x);
  EXPECT_FALSE(w.exact);
  EXPECT_EQ(w.n_used, 37u);
  EXPECT_NEAR(w.p_value, 0.15554555151653854, 1e-9);
  // scipy reports min(W+, W-); the two sum to n(n+1)/2.
  EXPECT_DOUBLE_EQ(std::min(w.statistic, 37.0 * 38.0 / 2.0 - w.statistic), 257.5);
}

TEST(Temporal, TailsRankFieldsByFrequency) {
  std::vector<NuStatistic> nus;
  const char* fields[] = {"a", "b", "c", "d", "e"};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) nus.push_back({fields[i], fields[j], i == 0 ? -0.01 : 0.0001 * j, 1991, 2014, 1990, 23});
  const auto rep = tails(nus, 1.0);
  ASSERT_FALSE(rep.left_counts.empty());
  EXPECT_EQ(rep.left_counts.front().first, "a");
  EXPECT_EQ(rep.left.size(), 4u);
  EXPECT_LT(rep.low, rep.high);
}

TEST(Temporal, YearlySeriesSkipsFieldsBelowCutoff) {
  YearlyModels models;
  FrequencyModel rich;
  rich.add("x", 3);
  rich.add("y", 1);
  FrequencyModel other;
  other.add("x", 1);
  other.add("z", 1);
  FrequencyModel poor;
  poor.add("x", 2);
  models[2000] = {{"a", rich}, {"b", other}, {"c", poor}};
  models[2001] = {{"a", rich}, {"b", rich}};
  const auto s = yearly_series(models, 2, Execution::serial);
  ASSERT_EQ(s.size(), 1u);
  const auto& ab = s.at({"a", "b"});
  ASSERT_EQ(ab.points.size(), 2u);
  EXPECT_EQ(ab.points[1].value, 0.0);
  EXPECT_GT(ab.points[0].value, 0.0);
}
