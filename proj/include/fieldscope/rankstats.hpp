#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fieldscope/dissimilarity_matrix.hpp"
#include "fieldscope/execution.hpp"

namespace fieldscope {

struct PairObservation {
  std::string field_i;
  std::string field_j;
  double x = 0.0;
  double y = 0.0;
};

struct PairedSample {
  std::vector<PairObservation> pairs;
  // Pairs dropped because a cell was flagged in either matrix.
  std::size_t excluded = 0;

  std::vector<double> xs() const;
  std::vector<double> ys() const;
  std::size_t size() const noexcept { return pairs.size(); }
};

// All unordered pairs i<j (in x's label order) present in both matrices. The
// label sets must match.
PairedSample paired_sample(const DissimilarityMatrix& x, const DissimilarityMatrix& y);

// Tie-corrected Kendall tau-b in O(n log n). Throws when either side is
// constant or fewer than two observations are given.
double kendall_tau_b(std::span<const double> x, std::span<const double> y);
double kendall_tau(const PairedSample& sample);

// 1-based ranks; tied values share their average rank.
std::vector<double> average_ranks(std::span<const double> v);

// Pearson correlation of average ranks.
double spearman_rho(std::span<const double> x, std::span<const double> y);
double spearman_rho(const PairedSample& sample);

enum class Statistic { tau, rho };

double correlation(std::span<const double> x, std::span<const double> y, Statistic stat);

struct BootstrapOptions {
  std::size_t n_boot = 1000;
  Statistic statistic = Statistic::tau;
  std::uint64_t seed = 1;
  bool two_sided = false;
  std::size_t max_redraws = 100;
  Execution exec = Execution::parallel;
};

struct BootstrapResult {
  // One-sided: share of the n_boot x n_boot cross pairs with corr(A) >= corr(B),
  // small when A is systematically less correlated than B.
  double p_value = 1.0;
  std::vector<double> stats_a;
  std::vector<double> stats_b;
  double mean_delta = 0.0;  // mean(stats_a) - mean(stats_b)
  std::size_t redraws = 0;
};

// Resamples each sample with replacement n_boot times. Replicate r of sample
// s draws from its own generator seeded by (seed, s, r), so results do not
// depend on worker count.
BootstrapResult bootstrap_compare(const PairedSample& a, const PairedSample& b,
                                  const BootstrapOptions& options = {});

// Kendall tau between rows x(i,.) and y(i,.), skipping j == i and flagged cells.
double per_field_correlation(const DissimilarityMatrix& x, const DissimilarityMatrix& y,
                             std::size_t i);

}  // namespace fieldscope
