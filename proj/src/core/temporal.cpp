#include "fieldscope/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include <boost/math/distributions/students_t.hpp>

#include "fieldscope/error.hpp"
#include "fieldscope/language_metric.hpp"

namespace fieldscope {

const TimePoint* PairTimeSeries::at(int year) const {
  auto it = std::lower_bound(points.begin(), points.end(), year,
                             [](const TimePoint& p, int y) { return p.year < y; });
  return it != points.end() && it->year == year ? &*it : nullptr;
}

std::map<FieldPair, PairTimeSeries> yearly_series(const YearlyModels& models, std::size_t v, Execution exec) {
  std::map<FieldPair, PairTimeSeries> out;
  for (const auto& [year, fields] : models) {
    std::vector<LabeledDistribution> present;
    for (const auto& [label, model] : fields) {
      if (model.v_available() < v) continue;
      present.push_back({label, top_v_probabilities(model, v)});
    }
    if (present.size() < 2) continue;
    const auto m = d_lang_matrix(present, exec);
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        if (m.is_error(i, j)) continue;
        auto& s = out[{m.labels()[i], m.labels()[j]}];
        s.field_i = m.labels()[i];
        s.field_j = m.labels()[j];
        s.points.push_back({year, m(i, j)});
      }
    }
  }
  return out;
}

PairTimeSeries moving_average(const PairTimeSeries& series, int window) {
  if (window < 1 || window % 2 == 0) fail(ErrorCategory::invalid_argument, "moving-average window must be odd and positive");
  const int half = window / 2;
  PairTimeSeries out{series.field_i, series.field_j, {}};
  out.points.reserve(series.points.size());
  for (const auto& p : series.points) {
    double sum = 0.0;
    int n = 0;
    for (const auto& q : series.points) {
      if (q.year < p.year - half) continue;
      if (q.year > p.year + half) break;
      sum += q.value;
      ++n;
    }
    out.points.push_back({p.year, window == 1 ? p.value : sum / n});
  }
  return out;
}

namespace {

int start_year(const PairTimeSeries& series, int t0) {
  if (series.at(t0 - 1)) return t0 - 1;
  if (series.at(t0)) return t0;
  fail(ErrorCategory::missing_endpoint, series.field_i + "/" + series.field_j + ": no value at " +
                                            std::to_string(t0 - 1) + " or " + std::to_string(t0));
}

// Correctly rounded sum of doubles (Shewchuk partials with the final
// half-way correction, as in Python's math.fsum).
double exact_sum(std::span<const double> xs) {
  std::vector<double> partials;
  for (double x : xs) {
    std::size_t i = 0;
    for (double y : partials) {
      if (std::fabs(x) < std::fabs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials[i++] = lo;
      x = hi;
    }
    partials.resize(i);
    partials.push_back(x);
  }
  if (partials.empty()) return 0.0;
  std::size_t n = partials.size();
  double hi = partials[--n];
  double lo = 0.0;
  while (n > 0) {
    const double x = hi;
    const double y = partials[--n];
    hi = x + y;
    const double yr = hi - x;
    lo = y - yr;
    if (lo != 0.0) break;
  }
  if (n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

}  // namespace

NuStatistic nu(const PairTimeSeries& series, int t0, int tf, int min_history) {
  const TimePoint* end = series.at(tf);
  if (!end) fail(ErrorCategory::missing_endpoint, series.field_i + "/" + series.field_j + ": no value at " + std::to_string(tf));
  const int ts = start_year(series, t0);
  const int span = tf - t0;
  if (span < min_history || span <= 0) {
    fail(ErrorCategory::short_history, series.field_i + "/" + series.field_j + ": history of " +
                                           std::to_string(span) + " years, need " + std::to_string(min_history));
  }
  NuStatistic s;
  s.field_i = series.field_i;
  s.field_j = series.field_j;
  s.t0 = t0;
  s.tf = tf;
  s.t_start = ts;
  s.span_years = span;
  s.nu = (end->value - series.at(ts)->value) / static_cast<double>(span);
  return s;
}

double nu_yearly_sum(const PairTimeSeries& series, int t0, int tf) {
  const int ts = start_year(series, t0);
  if (tf <= t0) fail(ErrorCategory::short_history, "tf must follow t0");
  // Each difference is split into its rounded value and exact error term so
  // the sum telescopes without loss.
  std::vector<double> terms;
  for (int t = ts + 1; t <= tf; ++t) {
    const TimePoint* a = series.at(t);
    const TimePoint* b = series.at(t - 1);
    if (!a || !b) fail(ErrorCategory::missing_endpoint, "no value at " + std::to_string(a ? t - 1 : t));
    const double x = a->value;
    const double y = -b->value;
    const double s = x + y;
    const double bv = s - x;
    const double err = (x - (s - bv)) + (y - bv);
    terms.push_back(s);
    terms.push_back(err);
  }
  return exact_sum(terms) / static_cast<double>(tf - t0);
}

NuSelection compute_nus(const std::map<FieldPair, PairTimeSeries>& series, int t0, int tf, int min_history) {
  NuSelection out;
  for (const auto& [pair, s] : series) {
    if (s.points.empty()) {
      ++out.missing_endpoint;
      continue;
    }
    const int first = std::max(t0, s.points.front().year);
    const int last = std::min(tf, s.points.back().year);
    try {
      out.values.push_back(nu(s, first, last, min_history));
    } catch (const Error& e) {
      if (e.category() == ErrorCategory::short_history) {
        ++out.short_history;
      } else if (e.category() == ErrorCategory::missing_endpoint) {
        ++out.missing_endpoint;
      } else {
        throw;
      }
    }
  }
  return out;
}

namespace {

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(std::span<const double> v, double mean) {
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

TTest one_sample_t_test(std::span<const double> values) {
  if (values.size() < 2) fail(ErrorCategory::degenerate, "t-test needs at least two values");
  const double m = mean_of(values);
  const double sd = sample_std(values, m);
  TTest t;
  if (sd == 0.0) {
    if (m == 0.0) fail(ErrorCategory::degenerate, "t-test undefined: all values are zero");
    t.statistic = std::copysign(std::numeric_limits<double>::infinity(), m);
    t.p_value = 0.0;
    return t;
  }
  const double n = static_cast<double>(values.size());
  t.statistic = m / (sd / std::sqrt(n));
  boost::math::students_t dist(n - 1.0);
  t.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t.statistic))));
  return t;
}

WilcoxonTest wilcoxon_signed_rank(std::span<const double> values) {
  std::vector<double> nz;
  for (double x : values) {
    if (!std::isfinite(x)) fail(ErrorCategory::invalid_argument, "Wilcoxon input is not finite");
    if (x != 0.0) nz.push_back(x);
  }
  const std::size_t n = nz.size();
  if (n == 0) fail(ErrorCategory::degenerate, "Wilcoxon test undefined: every value is zero");

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return std::fabs(nz[a]) < std::fabs(nz[b]); });
  // Doubled average ranks stay integral: a tie run over ranks k+1..e gets k+1+e.
  std::vector<std::size_t> rank2(n);
  double tie_term = 0.0;
  for (std::size_t k = 0; k < n;) {
    std::size_t e = k;
    while (e < n && std::fabs(nz[idx[e]]) == std::fabs(nz[idx[k]])) ++e;
    for (std::size_t t = k; t < e; ++t) rank2[idx[t]] = k + 1 + e;
    const double run = static_cast<double>(e - k);
    tie_term += run * run * run - run;
    k = e;
  }
  std::size_t w2 = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (nz[k] > 0.0) w2 += rank2[k];
  }

  WilcoxonTest out;
  out.statistic = static_cast<double>(w2) / 2.0;
  out.n_used = n;
  const double nn = static_cast<double>(n);

  if (n <= 25) {
    out.exact = true;
    // Null distribution of the doubled statistic: each rank is positive with
    // probability 1/2 independently.
    const std::size_t total = n * (n + 1);
    std::vector<double> ways(total + 1, 0.0);
    ways[0] = 1.0;
    std::size_t reach = 0;
    for (std::size_t r : rank2) {
      reach += r;
      for (std::size_t s = reach; s >= r; --s) ways[s] += ways[s - r];
    }
    const double all = std::ldexp(1.0, static_cast<int>(n));
    double lower = 0.0;
    double upper = 0.0;
    for (std::size_t s = 0; s <= total; ++s) {
      if (s <= w2) lower += ways[s];
      if (s >= w2) upper += ways[s];
    }
    out.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / all);
    return out;
  }

  out.exact = false;
  const double mean = nn * (nn + 1.0) / 4.0;
  const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
  if (var <= 0.0) fail(ErrorCategory::degenerate, "Wilcoxon variance is zero");
  const double z = (out.statistic - mean) / std::sqrt(var);
  out.p_value = std::min(1.0, std::erfc(std::fabs(z) / std::sqrt(2.0)));
  return out;
}

NuDistribution nu_distribution(std::span<const NuStatistic> nus) {
  if (nus.size() < 2) fail(ErrorCategory::degenerate, "need at least two qualifying pairs");
  NuDistribution d;
  d.values.reserve(nus.size());
  for (const auto& s : nus) d.values.push_back(s.nu);
  if (std::all_of(d.values.begin(), d.values.end(), [&](double x) { return x == d.values.front(); })) {
    fail(ErrorCategory::degenerate, "all nu values are identical");
  }
  d.mean = mean_of(d.values);
  d.std = sample_std(d.values, d.mean);
  d.t_test = one_sample_t_test(d.values);
  d.wilcoxon = wilcoxon_signed_rank(d.values);
  return d;
}

namespace {

std::vector<std::pair<std::string, std::size_t>> field_counts(const std::vector<NuStatistic>& pairs) {
  std::map<std::string, std::size_t> counts;
  for (const auto& p : pairs) {
    ++counts[p.field_i];
    ++counts[p.field_j];
  }
  std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

}  // namespace

TailReport tails(std::span<const NuStatistic> nus, double k_sigma) {
  if (nus.size() < 2) fail(ErrorCategory::degenerate, "tails need at least two values");
  std::vector<double> v;
  for (const auto& s : nus) v.push_back(s.nu);
  const double m = mean_of(v);
  const double sd = sample_std(v, m);
  TailReport r;
  r.low = m - k_sigma * sd;
  r.high = m + k_sigma * sd;
  for (const auto& s : nus) {
    if (s.nu < r.low) r.left.push_back(s);
    if (s.nu > r.high) r.right.push_back(s);
  }
  r.left_counts = field_counts(r.left);
  r.right_counts = field_counts(r.right);
  return r;
}

}  // namespace fieldscope
