#include <cmath>
#include <functional>
#include <ostream>
#include <random>

#include "commands.hpp"
#include "fieldscope/citation_metric.hpp"
#include "fieldscope/clustering.hpp"
#include "fieldscope/corpus_model.hpp"
#include "fieldscope/error.hpp"
#include "fieldscope/language_metric.hpp"
#include "fieldscope/oracle.hpp"
#include "fieldscope/rankstats.hpp"
#include "fieldscope/synth.hpp"
#include "fieldscope/taxonomy.hpp"
#include "fieldscope/temporal.hpp"
#include "fieldscope/textpipe.hpp"

namespace fieldscope::cli {
namespace {

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

bool entropy_closed_forms() {
  const std::vector<double> p{0.5, 0.3, 0.2};
  const std::vector<double> u(8, 0.125);
  return close(h_alpha(p, 2.0), 0.62, 1e-15) && close(h_alpha(u, 2.0), 1.0 - 1.0 / 8.0, 1e-15) &&
         h_alpha(std::vector<double>{1.0}, 3.0) == 0.0;
}

bool divergence_examples() {
  const std::vector<double> a{1.0, 0.0};
  const std::vector<double> b{0.0, 1.0};
  const std::vector<double> c{0.5, 0.5};
  return close(d_alpha(a, b, 2.0), 0.5, 1e-15) && close(d_lang(a, c), 1.0 / 3.0, 1e-15) && d_lang(a, b) == 1.0 &&
         d_lang(c, c) == 0.0 && close(d_max(a, b, 2.0), 0.5, 1e-15);
}

bool divergence_matches_oracle() {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t v = 1 + rng() % 50;
    const auto p = synth::random_distribution(rng, v, 0.3);
    const auto q = synth::random_distribution(rng, v, 0.3);
    for (double alpha : {2.0, 1.0, 0.5, 3.0}) {
      if (!close(d_alpha(p, q, alpha), std::max(0.0, oracle::divergence(p, q, alpha)), 1e-12)) return false;
    }
    if (!close(d_lang(p, q), oracle::normalized_divergence(p, q, 2.0), 1e-12)) return false;
    if (!close(d_lang(p, q), d_lang_explicit(p, q), 1e-12)) return false;
  }
  return true;
}

bool citation_example() {
  CitationGraph g({"1", "2", "3"});
  g.add(0, 1, 2);
  g.add(0, 2, 1);
  g.add(1, 2, 1);
  return close(d_cite(g, 0, 1), 2.0 / 3.0, 1e-15);
}

bool citation_matches_oracle() {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < n; ++k) labels.push_back(std::to_string(k));
    CitationGraph g(labels);
    std::vector<std::uint64_t> counts(n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
      counts[k] = rng() % 3 == 0 ? 0 : rng() % 20;
      g.add(k / n, k % n, counts[k]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double ref = oracle::citation_dissimilarity(counts, n, i, j);
        try {
          if (!close(d_cite(g, i, j), ref, 1e-12) || d_cite(g, i, j) != d_cite(g, j, i)) return false;
        } catch (const DegenerateCitationTerm&) {
          if (!std::isnan(ref)) return false;
        }
      }
    }
  }
  return true;
}

bool tree_distance_matches_oracle() {
  const auto corpus = synth::planted_hierarchy({}, 1);
  const auto& t = corpus.taxonomy;
  for (const auto& a : corpus.specialties) {
    for (const auto& b : corpus.specialties) {
      const int d = d_exp(t, a, b);
      if (d != oracle::tree_distance(t, a, b) || d < 0 || d > 3) return false;
    }
  }
  return true;
}

bool rank_statistics_match_oracle() {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng() % 40;
    std::vector<double> x(n);
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = static_cast<double>(rng() % 4);
      y[k] = static_cast<double>(rng() % 7);
    }
    try {
      if (!close(kendall_tau_b(x, y), oracle::kendall_tau_b(x, y), 1e-12)) return false;
      if (!close(spearman_rho(x, y), oracle::spearman_rho(x, y), 1e-12)) return false;
    } catch (const Error&) {
    }
  }
  return true;
}

bool upgma_matches_oracle() {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < n; ++k) labels.push_back("f" + std::to_string(k));
    DissimilarityMatrix m(labels);
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        d[i][j] = d[j][i] = static_cast<double>(1 + rng() % 5);
        m.set(i, j, d[i][j]);
      }
    }
    if (!(upgma(m) == oracle::group_average(d, labels))) return false;
  }
  DissimilarityMatrix three({"1", "2", "3"});
  three.set(0, 1, 0.1);
  three.set(0, 2, 0.5);
  three.set(1, 2, 0.5);
  return cut_at_percentile(upgma(three), 0.92) == std::vector<std::size_t>{0, 0, 1};
}

bool telescoping_is_exact() {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    PairTimeSeries s{"a", "b", {}};
    for (int y = 1990; y <= 2014; ++y) s.points.push_back({y, u(rng)});
    if (nu(s, 1991, 2014).nu != nu_yearly_sum(s, 1991, 2014)) return false;
  }
  return true;
}

bool mean_tests_match_fixture() {
  const std::vector<double> x{0.012, -0.004, 0.021, 0.008, -0.011, 0.017, 0.005, -0.002, 0.014, 0.009};
  const auto t = one_sample_t_test(x);
  const auto w = wilcoxon_signed_rank(x);
  return close(t.statistic, 2.176055918687612, 1e-9) && close(t.p_value, 0.05754305810694726, 1e-9) &&
         w.statistic == 46.0 && close(w.p_value, 0.064453125, 1e-12);
}

bool pipeline_trace() {
  PipelineConfig cfg;
  cfg.stopwords = {"we", "a", "it", "be"};
  return normalize("Self-organized Maps", "We study 3 models.", cfg) ==
             TokenList{"self-organized", "map", "study", "model"} &&
         normalize("", "It's a test", cfg) == TokenList{"test"};
}

bool cutoff_examples() {
  FrequencyModel m;
  m.add("a", 6);
  m.add("b", 3);
  m.add("c", 1);
  const auto pv = top_v_probabilities(m, 2);
  FrequencyModel tie;
  tie.add("b", 5);
  tie.add("a", 5);
  tie.add("c", 1);
  return pv.support == std::vector<std::string>{"a", "b"} && close(pv.probs[0], 2.0 / 3.0, 1e-15) &&
         top_v_probabilities(tie, 1).support == std::vector<std::string>{"a"};
}

}  // namespace

int selftest(const Context& ctx) {
  const std::vector<std::pair<const char*, std::function<bool()>>> checks{
      {"entropy closed forms", entropy_closed_forms},
      {"divergence examples", divergence_examples},
      {"divergence vs direct evaluation", divergence_matches_oracle},
      {"citation example", citation_example},
      {"citation vs double-sum reference", citation_matches_oracle},
      {"tree distance vs root paths", tree_distance_matches_oracle},
      {"rank statistics vs pair counting", rank_statistics_match_oracle},
      {"group average vs member-list reference", upgma_matches_oracle},
      {"yearly variation telescopes exactly", telescoping_is_exact},
      {"t-test and signed-rank fixture", mean_tests_match_fixture},
      {"text pipeline trace", pipeline_trace},
      {"vocabulary cutoff examples", cutoff_examples},
  };
  int failed = 0;
  for (const auto& [name, check] : checks) {
    bool ok = false;
    try {
      ok = check();
    } catch (const std::exception& e) {
      *ctx.err << name << ": " << e.what() << '\n';
    }
    *ctx.out << (ok ? "ok    " : "FAIL  ") << name << '\n';
    failed += ok ? 0 : 1;
  }
  *ctx.out << (failed == 0 ? "all checks passed" : std::to_string(failed) + " checks failed") << '\n';
  return failed == 0 ? 0 : 1;
}

}  // namespace fieldscope::cli
