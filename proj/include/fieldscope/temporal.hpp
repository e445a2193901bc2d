#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fieldscope/corpus_model.hpp"
#include "fieldscope/execution.hpp"

namespace fieldscope {

struct TimePoint {
  int year = 0;
  double value = 0.0;

  friend bool operator==(const TimePoint&, const TimePoint&) = default;
};

struct PairTimeSeries {
  std::string field_i;
  std::string field_j;
  std::vector<TimePoint> points;  // strictly increasing years, gaps allowed

  const TimePoint* at(int year) const;
};

using FieldPair = std::pair<std::string, std::string>;
using YearlyModels = std::map<int, std::map<std::string, FrequencyModel>>;

// d_lang per year for every unordered pair of fields present that year.
// Fields whose model fails the V cutoff in a year are absent that year.
std::map<FieldPair, PairTimeSeries> yearly_series(const YearlyModels& models, std::size_t v,
                                                  Execution exec = Execution::parallel);

// Centered mean over the points whose year lies within +-window/2; edge years
// use the truncated window. `window` must be odd.
PairTimeSeries moving_average(const PairTimeSeries& series, int window = 3);

struct NuStatistic {
  std::string field_i;
  std::string field_j;
  double nu = 0.0;
  int t0 = 0;
  int tf = 0;
  int t_start = 0;  // t0 - 1 when present, otherwise t0
  int span_years = 0;
};

// (D(tf) - D(t_start)) / (tf - t0). Throws MissingEndpoint (category
// missing_endpoint) when tf or both t0-1 and t0 are absent, and ShortHistory
// (short_history) when tf - t0 < min_history.
NuStatistic nu(const PairTimeSeries& series, int t0, int tf, int min_history = 12);

// The same value summed year by year, sum_t (D(t) - D(t-1)) / (tf - t0), with
// an exactly rounded sum. Requires every year from t_start to tf.
double nu_yearly_sum(const PairTimeSeries& series, int t0, int tf);

struct NuSelection {
  std::vector<NuStatistic> values;
  std::size_t short_history = 0;
  std::size_t missing_endpoint = 0;
};

// For each pair, clamps [t0, tf] to the pair's own first/last year and
// computes nu; pairs failing the history filter are counted.
NuSelection compute_nus(const std::map<FieldPair, PairTimeSeries>& series, int t0, int tf,
                        int min_history = 12);

struct TTest {
  double statistic = 0.0;
  double p_value = 1.0;
};

// One-sample two-sided t-test of mean == 0 with the n-1 standard deviation.
TTest one_sample_t_test(std::span<const double> values);

struct WilcoxonTest {
  double statistic = 0.0;  // W+, sum of ranks of positive values
  double p_value = 1.0;
  bool exact = true;
  std::size_t n_used = 0;  // values left after dropping zeros
};

// Two-sided signed-rank test of median == 0. Zeros are dropped; tied
// magnitudes share average ranks. Exact null distribution for n <= 25,
// tie-corrected normal approximation above.
WilcoxonTest wilcoxon_signed_rank(std::span<const double> values);

struct NuDistribution {
  std::vector<double> values;
  double mean = 0.0;
  double std = 0.0;
  TTest t_test;
  WilcoxonTest wilcoxon;
};

// Throws degenerate for fewer than two values or all values identical.
NuDistribution nu_distribution(std::span<const NuStatistic> nus);

struct TailReport {
  double low = 0.0;   // mean - k sigma
  double high = 0.0;  // mean + k sigma
  std::vector<NuStatistic> left;
  std::vector<NuStatistic> right;
  // Tail pairs containing each field, most frequent first, ties by label.
  std::vector<std::pair<std::string, std::size_t>> left_counts;
  std::vector<std::pair<std::string, std::size_t>> right_counts;
};

TailReport tails(std::span<const NuStatistic> nus, double k_sigma = 1.0);

}  // namespace fieldscope
