#include "fieldscope/rankstats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "fieldscope/error.hpp"

namespace fieldscope {

std::vector<double> PairedSample::xs() const {
  std::vector<double> v;
  v.reserve(pairs.size());
  for (const auto& p : pairs) v.push_back(p.x);
  return v;
}

std::vector<double> PairedSample::ys() const {
  std::vector<double> v;
  v.reserve(pairs.size());
  for (const auto& p : pairs) v.push_back(p.y);
  return v;
}

PairedSample paired_sample(const DissimilarityMatrix& x, const DissimilarityMatrix& y) {
  if (x.size() != y.size()) fail(ErrorCategory::unknown_label, "matrices cover different numbers of fields");
  std::vector<std::size_t> to_y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto k = y.index_of(x.labels()[i]);
    if (!k) fail(ErrorCategory::unknown_label, "field '" + x.labels()[i] + "' missing from the second matrix");
    to_y[i] = *k;
  }
  PairedSample s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const std::size_t yi = to_y[i];
      const std::size_t yj = to_y[j];
      const double vx = x(i, j);
      const double vy = y(yi, yj);
      if (x.is_error(i, j) || y.is_error(yi, yj) || !std::isfinite(vx) || !std::isfinite(vy)) {
        ++s.excluded;
        continue;
      }
      s.pairs.push_back({x.labels()[i], x.labels()[j], vx, vy});
    }
  }
  return s;
}

namespace {

void check_inputs(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorCategory::invalid_argument, "x and y differ in length");
  if (x.size() < 2) fail(ErrorCategory::invalid_argument, "rank correlation needs at least two observations");
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!std::isfinite(x[k]) || !std::isfinite(y[k])) fail(ErrorCategory::invalid_argument, "rank correlation input is not finite");
  }
}

// Sum of t(t-1)/2 over runs of equal values in a sorted sequence.
template <class It, class Eq>
std::int64_t tied_pairs(It first, It last, Eq eq) {
  std::int64_t total = 0;
  while (first != last) {
    It run = first;
    std::int64_t t = 0;
    while (run != last && eq(*run, *first)) {
      ++run;
      ++t;
    }
    total += t * (t - 1) / 2;
    first = run;
  }
  return total;
}

// Sorts v[lo, hi) in place and returns the number of inversions.
std::int64_t merge_count(std::vector<double>& v, std::vector<double>& buf, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t swaps = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<std::int64_t>(mid - i);
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

}  // namespace

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  check_inputs(x, y);
  const std::size_t n = x.size();
  std::vector<std::pair<double, double>> xy(n);
  for (std::size_t k = 0; k < n; ++k) xy[k] = {x[k], y[k]};
  std::sort(xy.begin(), xy.end());

  const auto n0 = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const std::int64_t n1 = tied_pairs(xy.begin(), xy.end(), [](const auto& a, const auto& b) { return a.first == b.first; });
  const std::int64_t n3 = tied_pairs(xy.begin(), xy.end(), [](const auto& a, const auto& b) { return a == b; });

  std::vector<double> ys(n);
  for (std::size_t k = 0; k < n; ++k) ys[k] = xy[k].second;
  std::vector<double> buf(n);
  const std::int64_t swaps = merge_count(ys, buf, 0, n);
  const std::int64_t n2 = tied_pairs(ys.begin(), ys.end(), std::equal_to<>{});

  if (n1 == n0 || n2 == n0) fail(ErrorCategory::degenerate, "Kendall tau undefined: one variable is constant");
  const std::int64_t s = n0 - n1 - n2 + n3 - 2 * swaps;
  const double denom = std::sqrt(static_cast<double>(n0 - n1)) * std::sqrt(static_cast<double>(n0 - n2));
  return std::clamp(static_cast<double>(s) / denom, -1.0, 1.0);
}

double kendall_tau(const PairedSample& sample) { return kendall_tau_b(sample.xs(), sample.ys()); }

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t k = 0;
  while (k < idx.size()) {
    std::size_t end = k;
    while (end < idx.size() && v[idx[end]] == v[idx[k]]) ++end;
    const double r = 0.5 * static_cast<double>(k + 1 + end);
    for (std::size_t t = k; t < end; ++t) ranks[idx[t]] = r;
    k = end;
  }
  return ranks;
}

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  check_inputs(x, y);
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mean = 0.5 * static_cast<double>(x.size() + 1);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < rx.size(); ++k) {
    const double a = rx[k] - mean;
    const double b = ry[k] - mean;
    sxy += a * b;
    sxx += a * a;
    syy += b * b;
  }
  if (sxx == 0.0 || syy == 0.0) fail(ErrorCategory::degenerate, "Spearman rho undefined: zero rank variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman_rho(const PairedSample& sample) { return spearman_rho(sample.xs(), sample.ys()); }

double correlation(std::span<const double> x, std::span<const double> y, Statistic stat) {
  return stat == Statistic::tau ? kendall_tau_b(x, y) : spearman_rho(x, y);
}

namespace {

struct Replicates {
  std::vector<double> stats;
  std::size_t redraws = 0;
};

Replicates resample(const PairedSample& sample, std::size_t which, const BootstrapOptions& o) {
  const auto x = sample.xs();
  const auto y = sample.ys();
  const std::size_t n = x.size();
  Replicates out;
  out.stats.resize(o.n_boot);
  std::vector<std::size_t> redraws(o.n_boot, 0);
  std::vector<char> failed(o.n_boot, 0);

  auto replicate = [&](std::size_t r) {
    std::vector<double> bx(n);
    std::vector<double> by(n);
    for (std::size_t attempt = 0; attempt <= o.max_redraws; ++attempt) {
      std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                        static_cast<std::uint32_t>(which), static_cast<std::uint32_t>(r),
                        static_cast<std::uint32_t>(attempt)};
      std::mt19937_64 rng(seq);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t t = pick(rng);
        bx[k] = x[t];
        by[k] = y[t];
      }
      try {
        out.stats[r] = correlation(bx, by, o.statistic);
        redraws[r] = attempt;
        return;
      } catch (const Error& e) {
        if (e.category() != ErrorCategory::degenerate) throw;
      }
    }
    failed[r] = 1;
  };

  const auto total = static_cast<std::ptrdiff_t>(o.n_boot);
  if (o.exec == Execution::serial) {
    for (std::ptrdiff_t r = 0; r < total; ++r) replicate(static_cast<std::size_t>(r));
  } else {
#pragma omp parallel for schedule(dynamic, 8) num_threads(worker_count())
    for (std::ptrdiff_t r = 0; r < total; ++r) replicate(static_cast<std::size_t>(r));
  }
  if (std::find(failed.begin(), failed.end(), 1) != failed.end()) {
    fail(ErrorCategory::degenerate, "bootstrap resample stayed degenerate after " + std::to_string(o.max_redraws) + " redraws");
  }
  out.redraws = std::accumulate(redraws.begin(), redraws.end(), std::size_t{0});
  return out;
}

}  // namespace

BootstrapResult bootstrap_compare(const PairedSample& a, const PairedSample& b, const BootstrapOptions& options) {
  if (options.n_boot == 0) fail(ErrorCategory::invalid_argument, "n_boot must be positive");
  // Fails early on degenerate inputs.
  correlation(a.xs(), a.ys(), options.statistic);
  correlation(b.xs(), b.ys(), options.statistic);

  auto ra = resample(a, 0, options);
  auto rb = resample(b, 1, options);

  std::vector<double> sorted_b = rb.stats;
  std::sort(sorted_b.begin(), sorted_b.end());
  std::uint64_t a_ge_b = 0;
  std::uint64_t a_le_b = 0;
  for (double s : ra.stats) {
    auto le = std::upper_bound(sorted_b.begin(), sorted_b.end(), s);
    auto lt = std::lower_bound(sorted_b.begin(), sorted_b.end(), s);
    a_ge_b += static_cast<std::uint64_t>(le - sorted_b.begin());
    a_le_b += static_cast<std::uint64_t>(sorted_b.end() - lt);
  }
  const double cross = static_cast<double>(options.n_boot) * static_cast<double>(options.n_boot);

  BootstrapResult out;
  const double upper = static_cast<double>(a_ge_b) / cross;
  const double lower = static_cast<double>(a_le_b) / cross;
  out.p_value = options.two_sided ? std::min(1.0, 2.0 * std::min(upper, lower)) : upper;
  const double mean_a = std::accumulate(ra.stats.begin(), ra.stats.end(), 0.0) / static_cast<double>(options.n_boot);
  const double mean_b = std::accumulate(rb.stats.begin(), rb.stats.end(), 0.0) / static_cast<double>(options.n_boot);
  out.mean_delta = mean_a - mean_b;
  out.redraws = ra.redraws + rb.redraws;
  out.stats_a = std::move(ra.stats);
  out.stats_b = std::move(rb.stats);
  return out;
}

double per_field_correlation(const DissimilarityMatrix& x, const DissimilarityMatrix& y, std::size_t i) {
  if (i >= x.size()) fail(ErrorCategory::invalid_argument, "field index out of range");
  auto yi = y.index_of(x.labels()[i]);
  if (!yi || x.size() != y.size()) fail(ErrorCategory::unknown_label, "matrices do not share labels");
  std::vector<double> rx;
  std::vector<double> ry;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j == i) continue;
    auto yj = y.index_of(x.labels()[j]);
    if (!yj) fail(ErrorCategory::unknown_label, "field '" + x.labels()[j] + "' missing from the second matrix");
    if (x.is_error(i, j) || y.is_error(*yi, *yj)) continue;
    rx.push_back(x(i, j));
    ry.push_back(y(*yi, *yj));
  }
  return kendall_tau_b(rx, ry);
}

}  // namespace fieldscope
