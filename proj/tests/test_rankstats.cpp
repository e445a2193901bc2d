#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fieldscope/error.hpp"
#include "fieldscope/execution.hpp"
#include "fieldscope/oracle.hpp"
#include "fieldscope/rankstats.hpp"

using namespace fieldscope;

TEST(RankStats, KnownValues) {
  // scipy.stats.kendalltau / spearmanr on these inputs.
  const std::vector<double> x{1, 2, 2, 3, 4, 4, 5};
  const std::vector<double> y{2, 1, 3, 3, 5, 4, 4};
  EXPECT_NEAR(kendall_tau_b(x, y), 0.6842105263157894, 1e-12);
  EXPECT_NEAR(spearman_rho(x, y), 0.8333333333333335, 1e-12);
  const std::vector<double> rev{5, 4, 4, 3, 2, 2, 1};
  EXPECT_NEAR(kendall_tau_b(x, rev), -1.0, 1e-15);
}

TEST(RankStats, AverageRanks) {
  const std::vector<double> v{10, 20, 10, 30};
  EXPECT_EQ(average_ranks(v), (std::vector<double>{1.5, 3, 1.5, 4}));
}

TEST(RankStats, MatchesQuadraticOracleWithTies) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 3 + rng() % 80;
    std::vector<double> x(n);
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = static_cast<double>(rng() % 4);
      y[k] = static_cast<double>(rng() % 6);
    }
    x[0] = -1.0;
    y[1] = -1.0;
    EXPECT_NEAR(kendall_tau_b(x, y), oracle::kendall_tau_b(x, y), 1e-12);
    EXPECT_NEAR(spearman_rho(x, y), oracle::spearman_rho(x, y), 1e-12);
  }
}

TEST(RankStats, ConstantInputIsDegenerate) {
  const std::vector<double> x{1, 1, 1};
  const std::vector<double> y{1, 2, 3};
  EXPECT_THROW(kendall_tau_b(x, y), Error);
  EXPECT_THROW(spearman_rho(y, x), Error);
}

TEST(RankStats, PairedSampleSkipsFlaggedCells) {
  DissimilarityMatrix a({"p", "q", "r"});
  DissimilarityMatrix b({"p", "q", "r"});
  a.set(0, 1, 1);
  a.set(0, 2, 2);
  a.set(1, 2, 3);
  b.set(0, 1, 0.1);
  b.set_error(0, 2, "degenerate");
  b.set(1, 2, 0.3);
  const auto s = paired_sample(a, b);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.excluded, 1u);
  DissimilarityMatrix other({"p", "q", "z"});
  EXPECT_THROW(paired_sample(a, other), Error);
}

namespace {

PairedSample noisy_sample(std::uint64_t seed, double slope) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  PairedSample s;
  for (int k = 0; k < 120; ++k) {
    const double x = z(rng);
    s.pairs.push_back({"a" + std::to_string(k), "b", x, slope * x + z(rng)});
  }
  return s;
}

}  // namespace

TEST(RankStats, BootstrapIndependentOfWorkerCount) {
  const auto a = noisy_sample(1, 0.5);
  const auto b = noisy_sample(2, 1.0);
  BootstrapOptions opts;
  opts.n_boot = 200;
  opts.seed = 42;
  opts.exec = Execution::serial;
  const auto serial = bootstrap_compare(a, b, opts);
  opts.exec = Execution::parallel;
  set_worker_count(4);
  const auto parallel = bootstrap_compare(a, b, opts);
  set_worker_count(0);
  EXPECT_EQ(serial.stats_a, parallel.stats_a);
  EXPECT_EQ(serial.stats_b, parallel.stats_b);
  EXPECT_EQ(serial.p_value, parallel.p_value);
  EXPECT_LT(serial.p_value, 0.05);
  EXPECT_LT(serial.mean_delta, 0.0);
}

TEST(RankStats, TwoSidedDoublesSmallerTail) {
  const auto a = noisy_sample(3, 0.5);
  const auto b = noisy_sample(4, 0.6);
  BootstrapOptions opts;
  opts.n_boot = 200;
  const auto one = bootstrap_compare(a, b, opts);
  opts.two_sided = true;
  const auto two = bootstrap_compare(a, b, opts);
  EXPECT_GE(two.p_value, std::min(1.0, 2.0 * std::min(one.p_value, 1.0 - one.p_value)) - 1e-12);
  EXPECT_LE(two.p_value, 1.0);
}

TEST(RankStats, PerFieldCorrelation) {
  DissimilarityMatrix a({"p", "q", "r", "s"});
  DissimilarityMatrix b({"p", "q", "r", "s"});
  a.set(0, 1, 1);
  a.set(0, 2, 2);
  a.set(0, 3, 3);
  b.set(0, 1, 0.3);
  b.set(0, 2, 0.2);
  b.set(0, 3, 0.1);
  EXPECT_NEAR(per_field_correlation(a, b, 0), -1.0, 1e-15);
}
