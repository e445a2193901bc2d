#include "fieldscope/language_metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string_view>

#include "fieldscope/delimited.hpp"
#include "fieldscope/error.hpp"

namespace fieldscope {
namespace {

constexpr double kSumTolerance = 1e-9;

bool is_shannon(double alpha) { return alpha == 1.0; }

void check_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    fail(ErrorCategory::invalid_argument, "entropy order alpha must be positive and finite");
  }
}

void check_distribution(std::span<const double> p, bool normalized) {
  double sum = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < 0.0) fail(ErrorCategory::invalid_argument, "probabilities must be finite and non-negative");
    sum += x;
  }
  if (sum > 1.0 + kSumTolerance || (normalized && sum < 1.0 - kSumTolerance)) {
    fail(ErrorCategory::invalid_argument, "probabilities sum to " + std::to_string(sum) + ", not 1");
  }
}

void check_pair(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) fail(ErrorCategory::invalid_argument, "dense distributions differ in length");
  check_distribution(p, true);
  check_distribution(q, true);
}

double power_sum(std::span<const double> p, double alpha) {
  double s = 0.0;
  for (double x : p) {
    if (x > 0.0) s += alpha == 2.0 ? x * x : std::pow(x, alpha);
  }
  return s;
}

double entropy_of(std::span<const double> p, double alpha) {
  if (is_shannon(alpha)) {
    double h = 0.0;
    for (double x : p) {
      if (x > 0.0) h -= x * std::log(x);
    }
    return h;
  }
  return (power_sum(p, alpha) - 1.0) / (1.0 - alpha);
}

// (word, probability) pairs sorted by word; the common order for every sum.
struct SortedDistribution {
  std::vector<std::string_view> words;
  std::vector<double> probs;
};

SortedDistribution sorted_by_word(const ProbabilityVector& p) {
  if (p.support.size() != p.probs.size()) {
    fail(ErrorCategory::invalid_argument, "probability vector support and probs differ in length");
  }
  std::vector<std::size_t> idx(p.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return p.support[a] < p.support[b]; });
  SortedDistribution s;
  s.words.reserve(idx.size());
  s.probs.reserve(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k > 0 && p.support[idx[k]] == p.support[idx[k - 1]]) {
      fail(ErrorCategory::invalid_argument, "duplicate word '" + p.support[idx[k]] + "' in support");
    }
    s.words.push_back(p.support[idx[k]]);
    s.probs.push_back(p.probs[idx[k]]);
  }
  check_distribution(s.probs, p.normalized);
  return s;
}

// Dense p and q over the union of both supports, in ascending word order.
std::pair<std::vector<double>, std::vector<double>> align(const SortedDistribution& a,
                                                          const SortedDistribution& b) {
  std::vector<double> p;
  std::vector<double> q;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.words.size() || j < b.words.size()) {
    if (j == b.words.size() || (i < a.words.size() && a.words[i] < b.words[j])) {
      p.push_back(a.probs[i++]);
      q.push_back(0.0);
    } else if (i == a.words.size() || b.words[j] < a.words[i]) {
      p.push_back(0.0);
      q.push_back(b.probs[j++]);
    } else {
      p.push_back(a.probs[i++]);
      q.push_back(b.probs[j++]);
    }
  }
  return {std::move(p), std::move(q)};
}

double divergence(std::span<const double> p, std::span<const double> q, double alpha) {
  if (alpha == 2.0) {
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double d = p[k] - q[k];
      s += d * d;
    }
    return s / 4.0;
  }
  std::vector<double> m(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) m[k] = 0.5 * (p[k] + q[k]);
  const double d = entropy_of(m, alpha) - 0.5 * entropy_of(p, alpha) - 0.5 * entropy_of(q, alpha);
  return std::max(0.0, d);
}

double bound(double hp, double hq, double alpha) {
  if (is_shannon(alpha)) fail(ErrorCategory::invalid_argument, "d_max is undefined for alpha = 1");
  return (std::pow(2.0, 1.0 - alpha) - 1.0) / 2.0 * (hp + hq + 2.0 / (1.0 - alpha));
}

double normalized_order2(double sum_pp, double sum_qq, double sum_pq) {
  const double s = sum_pp + sum_qq;
  if (!(s > 0.0)) fail(ErrorCategory::degenerate, "d_lang undefined: both distributions carry no mass");
  return std::clamp(1.0 - 2.0 * sum_pq / s, 0.0, 1.0);
}

}  // namespace

double h_alpha(std::span<const double> p, double alpha) {
  check_alpha(alpha);
  check_distribution(p, true);
  return entropy_of(p, alpha);
}

double h_alpha(const ProbabilityVector& p, double alpha) {
  check_alpha(alpha);
  return entropy_of(sorted_by_word(p).probs, alpha);
}

double d_alpha(std::span<const double> p, std::span<const double> q, double alpha) {
  check_alpha(alpha);
  check_pair(p, q);
  return divergence(p, q, alpha);
}

double d_alpha(const ProbabilityVector& p, const ProbabilityVector& q, double alpha) {
  check_alpha(alpha);
  auto [a, b] = align(sorted_by_word(p), sorted_by_word(q));
  return divergence(a, b, alpha);
}

double d_max(std::span<const double> p, std::span<const double> q, double alpha) {
  check_alpha(alpha);
  check_pair(p, q);
  return bound(entropy_of(p, alpha), entropy_of(q, alpha), alpha);
}

double d_max(const ProbabilityVector& p, const ProbabilityVector& q, double alpha) {
  check_alpha(alpha);
  return bound(entropy_of(sorted_by_word(p).probs, alpha), entropy_of(sorted_by_word(q).probs, alpha), alpha);
}

double d_lang(std::span<const double> p, std::span<const double> q) {
  check_pair(p, q);
  double pp = 0.0;
  double qq = 0.0;
  double pq = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    pp += p[k] * p[k];
    qq += q[k] * q[k];
    pq += p[k] * q[k];
  }
  return normalized_order2(pp, qq, pq);
}

namespace {

double sum_squares(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) s += x * x;
  return s;
}

template <class Key>
double cross_sum(const std::vector<Key>& wa, const std::vector<double>& pa,
                 const std::vector<Key>& wb, const std::vector<double>& pb) {
  double s = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < wa.size() && j < wb.size()) {
    if (wa[i] < wb[j]) {
      ++i;
    } else if (wb[j] < wa[i]) {
      ++j;
    } else {
      s += pa[i++] * pb[j++];
    }
  }
  return s;
}

}  // namespace

double d_lang(const ProbabilityVector& p, const ProbabilityVector& q) {
  auto a = sorted_by_word(p);
  auto b = sorted_by_word(q);
  return normalized_order2(sum_squares(a.probs), sum_squares(b.probs),
                           cross_sum(a.words, a.probs, b.words, b.probs));
}

double d_lang_explicit(std::span<const double> p, std::span<const double> q) {
  check_pair(p, q);
  std::vector<double> m(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) m[k] = 0.5 * (p[k] + q[k]);
  const double hp = entropy_of(p, 2.0);
  const double hq = entropy_of(q, 2.0);
  const double denom = 0.5 * (2.0 - hp - hq);
  if (!(denom > 0.0)) fail(ErrorCategory::degenerate, "d_lang undefined: both distributions carry no mass");
  return (2.0 * entropy_of(m, 2.0) - hp - hq) / denom;
}

namespace {

// Each field re-expressed over global word ids assigned in ascending word
// order, so integer comparison reproduces the pairwise routine's sum order.
struct IndexedField {
  std::vector<std::uint32_t> ids;
  std::vector<double> probs;
  double sum_sq = 0.0;
};

std::vector<IndexedField> index_fields(std::span<const LabeledDistribution> fields) {
  std::vector<SortedDistribution> sorted;
  sorted.reserve(fields.size());
  std::vector<std::string_view> vocab;
  for (const auto& f : fields) {
    sorted.push_back(sorted_by_word(f.distribution));
    vocab.insert(vocab.end(), sorted.back().words.begin(), sorted.back().words.end());
  }
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());

  std::vector<IndexedField> out(fields.size());
  for (std::size_t f = 0; f < fields.size(); ++f) {
    const auto& s = sorted[f];
    auto& o = out[f];
    o.ids.reserve(s.words.size());
    auto hint = vocab.begin();
    for (auto w : s.words) {
      hint = std::lower_bound(hint, vocab.end(), w);
      o.ids.push_back(static_cast<std::uint32_t>(hint - vocab.begin()));
    }
    o.probs = s.probs;
    o.sum_sq = sum_squares(o.probs);
  }
  return out;
}

std::vector<std::string> labels_of(std::span<const LabeledDistribution> fields) {
  std::vector<std::string> labels;
  labels.reserve(fields.size());
  for (const auto& f : fields) labels.push_back(f.label);
  return labels;
}

// Fills the upper triangle with `cell(i, j)`; a thrown Error marks the cell.
template <class Cell>
void fill_pairs(DissimilarityMatrix& m, Execution exec, Cell cell) {
  const std::size_t n = m.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2 + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> values(pairs.size());
  std::vector<std::optional<std::string>> failures(pairs.size());
  auto one = [&](std::size_t k) {
    try {
      values[k] = cell(pairs[k].first, pairs[k].second);
    } catch (const Error& e) {
      failures[k] = std::string(category_name(e.category())) + ": " + e.what();
    }
  };
  const auto total = static_cast<std::ptrdiff_t>(pairs.size());
  if (exec == Execution::serial) {
    for (std::ptrdiff_t k = 0; k < total; ++k) one(static_cast<std::size_t>(k));
  } else {
#pragma omp parallel for schedule(dynamic, 16) num_threads(worker_count())
    for (std::ptrdiff_t k = 0; k < total; ++k) one(static_cast<std::size_t>(k));
  }
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 0.0);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (failures[k]) {
      m.set_error(pairs[k].first, pairs[k].second, *failures[k]);
    } else {
      m.set(pairs[k].first, pairs[k].second, values[k]);
    }
  }
}

}  // namespace

DissimilarityMatrix d_lang_matrix(std::span<const LabeledDistribution> fields, Execution exec) {
  DissimilarityMatrix m(labels_of(fields));
  m.metadata()["measure"] = "d_lang";
  m.metadata()["alpha"] = "2";
  const auto indexed = index_fields(fields);
  fill_pairs(m, exec, [&](std::size_t i, std::size_t j) {
    const auto& a = indexed[i];
    const auto& b = indexed[j];
    return normalized_order2(a.sum_sq, b.sum_sq, cross_sum(a.ids, a.probs, b.ids, b.probs));
  });
  return m;
}

DissimilarityMatrix d_alpha_matrix(std::span<const LabeledDistribution> fields, double alpha, Execution exec) {
  check_alpha(alpha);
  DissimilarityMatrix m(labels_of(fields));
  m.metadata()["measure"] = "d_alpha";
  m.metadata()["alpha"] = delimited::format_double(alpha);
  fill_pairs(m, exec, [&](std::size_t i, std::size_t j) {
    return d_alpha(fields[i].distribution, fields[j].distribution, alpha);
  });
  return m;
}

}  // namespace fieldscope
