#include "fieldscope/corpus_model.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>

#include "fieldscope/delimited.hpp"
#include "fieldscope/error.hpp"
#include "fieldscope/language_metric.hpp"

namespace fieldscope {

void FrequencyModel::add(std::string_view word, std::uint64_t n) {
  if (n == 0) return;
  auto it = counts_.find(word);
  if (it == counts_.end()) {
    counts_.emplace(std::string(word), n);
  } else {
    it->second += n;
  }
  total_ += n;
}

void FrequencyModel::add(std::string&& word, std::uint64_t n) {
  if (n == 0) return;
  auto it = counts_.find(std::string_view(word));
  if (it == counts_.end()) {
    counts_.emplace(std::move(word), n);
  } else {
    it->second += n;
  }
  total_ += n;
}

void FrequencyModel::merge(const FrequencyModel& other) {
  for (const auto& [w, c] : other.counts_) add(std::string_view(w), c);
}

std::uint64_t FrequencyModel::count(std::string_view word) const {
  auto it = counts_.find(word);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, std::uint64_t>> FrequencyModel::sorted_entries() const {
  std::vector<std::pair<std::string, std::uint64_t>> out(counts_.begin(), counts_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return out;
}

FrequencyModel build_model(std::span<const TokenList> documents) {
  FrequencyModel m;
  for (const auto& doc : documents) {
    for (const auto& t : doc) m.add(std::string_view(t));
  }
  return m;
}

FrequencyModel merge(std::span<const FrequencyModel> models) {
  FrequencyModel m;
  for (const auto& x : models) m.merge(x);
  return m;
}

FrequencyModel count_documents(std::span<const Document> documents, const PipelineConfig& cfg,
                               Execution exec) {
  auto count_one = [&cfg](const Document& d, FrequencyModel& into) {
    std::string text = d.title;
    if (!d.abstract.empty()) {
      text += ' ';
      text += cfg.copyright_regexes().empty() ? d.abstract : strip_copyright(d.abstract, cfg);
    }
    normalize_text(text, cfg, [&into](std::string&& t) { into.add(std::move(t)); });
  };

  if (exec == Execution::serial || documents.size() < 2) {
    FrequencyModel m;
    for (const auto& d : documents) count_one(d, m);
    return m;
  }

  std::vector<FrequencyModel> partial(static_cast<std::size_t>(worker_count()));
  const auto n = static_cast<std::ptrdiff_t>(documents.size());
#pragma omp parallel num_threads(static_cast<int>(partial.size()))
  {
    auto& mine = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 64)
    for (std::ptrdiff_t k = 0; k < n; ++k) count_one(documents[static_cast<std::size_t>(k)], mine);
  }
  FrequencyModel m = std::move(partial.front());
  for (std::size_t k = 1; k < partial.size(); ++k) m.merge(partial[k]);
  return m;
}

ProbabilityVector top_v_probabilities(const FrequencyModel& model, std::size_t v, CutoffMode mode) {
  if (v == 0) fail(ErrorCategory::invalid_argument, "vocabulary size V must be positive");
  if (model.v_available() < v) throw InsufficientVocabulary(model.v_available(), v);

  std::vector<std::pair<std::string_view, std::uint64_t>> entries;
  entries.reserve(model.v_available());
  for (const auto& [w, c] : model.counts()) entries.emplace_back(w, c);
  auto before = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  if (v < entries.size()) {
    std::nth_element(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(v), entries.end(), before);
    entries.resize(v);
  }
  std::sort(entries.begin(), entries.end(), before);

  std::uint64_t kept = 0;
  for (const auto& e : entries) kept += e.second;
  const double denom = static_cast<double>(mode == CutoffMode::renormalize ? kept : model.total_tokens());

  ProbabilityVector pv;
  pv.normalized = mode == CutoffMode::renormalize;
  pv.support.reserve(v);
  pv.probs.reserve(v);
  for (const auto& [w, c] : entries) {
    pv.support.emplace_back(w);
    pv.probs.push_back(static_cast<double>(c) / denom);
  }
  return pv;
}

SelfDissimilarity self_dissimilarity(std::span<const TokenList> documents, std::size_t v,
                                     std::size_t n_splits, std::uint64_t seed) {
  if (n_splits == 0) fail(ErrorCategory::invalid_argument, "n_splits must be positive");
  if (documents.size() < 2) fail(ErrorCategory::invalid_argument, "self-dissimilarity needs at least two documents");

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(documents.size());
  SelfDissimilarity out;
  out.values.reserve(n_splits);
  for (std::size_t s = 0; s < n_splits; ++s) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    FrequencyModel a;
    FrequencyModel b;
    const std::size_t half = order.size() / 2;
    for (std::size_t k = 0; k < order.size(); ++k) {
      auto& target = k < half ? a : b;
      for (const auto& t : documents[order[k]]) target.add(std::string_view(t));
    }
    out.values.push_back(d_lang(top_v_probabilities(a, v), top_v_probabilities(b, v)));
  }

  out.mean = std::accumulate(out.values.begin(), out.values.end(), 0.0) / static_cast<double>(n_splits);
  if (n_splits == 1) {
    out.degenerate = true;
    return out;
  }
  double ss = 0.0;
  for (double x : out.values) ss += (x - out.mean) * (x - out.mean);
  const double sd = std::sqrt(ss / static_cast<double>(n_splits - 1));
  out.relative_std = out.mean > 0.0 ? sd / out.mean : 0.0;
  return out;
}

void write_model(std::ostream& out, const FrequencyModel& model, const ModelFileHeader& header) {
  out << "# field=" << header.field << '\n'
      << "# window=" << header.window << '\n'
      << "# total_tokens=" << model.total_tokens() << '\n';
  for (const auto& [w, c] : model.sorted_entries()) out << w << '\t' << c << '\n';
}

FrequencyModel read_model(std::istream& in, ModelFileHeader* header) {
  FrequencyModel m;
  std::string line;
  std::optional<std::uint64_t> declared;
  std::size_t lineno = 0;
  while (delimited::read_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = delimited::trim(std::string_view(line).substr(1));
      auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      auto key = body.substr(0, eq);
      auto value = std::string(body.substr(eq + 1));
      if (key == "total_tokens") {
        declared = static_cast<std::uint64_t>(delimited::parse_integer(value));
      } else if (header && key == "field") {
        header->field = value;
      } else if (header && key == "window") {
        header->window = value;
      }
      continue;
    }
    auto tab = line.rfind('\t');
    if (tab == std::string::npos || tab == 0) {
      fail(ErrorCategory::parse, "model line " + std::to_string(lineno) + ": expected word<TAB>count");
    }
    long long c = delimited::parse_integer(std::string_view(line).substr(tab + 1));
    if (c <= 0) fail(ErrorCategory::parse, "model line " + std::to_string(lineno) + ": count must be positive");
    std::string_view word = std::string_view(line).substr(0, tab);
    if (m.count(word) != 0) fail(ErrorCategory::duplicate_id, "model repeats word '" + std::string(word) + "'");
    m.add(word, static_cast<std::uint64_t>(c));
  }
  if (declared && *declared != m.total_tokens()) {
    fail(ErrorCategory::parse, "model total_tokens=" + std::to_string(*declared) +
                                   " disagrees with the row sum " + std::to_string(m.total_tokens()));
  }
  return m;
}

}  // namespace fieldscope
