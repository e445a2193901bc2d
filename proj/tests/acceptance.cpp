// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fieldscope/citation_metric.hpp"
#include "fieldscope/cli.hpp"
#include "fieldscope/clustering.hpp"
#include "fieldscope/corpus_model.hpp"
#include "fieldscope/error.hpp"
#include "fieldscope/io.hpp"
#include "fieldscope/language_metric.hpp"
#include "fieldscope/oracle.hpp"
#include "fieldscope/rankstats.hpp"
#include "fieldscope/synth.hpp"
#include "fieldscope/taxonomy.hpp"
#include "fieldscope/temporal.hpp"

namespace fs = std::filesystem;
using namespace fieldscope;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Shared random distribution pairs for the first two criteria.
struct DistributionPair {
  std::vector<double> p;
  std::vector<double> q;
};

std::vector<DistributionPair> random_pairs(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<DistributionPair> out;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t v = 1 + rng() % 50;
    const double sparsity = (k % 3) * 0.3;
    out.push_back({synth::random_distribution(rng, v, sparsity), synth::random_distribution(rng, v, sparsity)});
  }
  return out;
}

ProbabilityVector as_vector(const std::vector<double>& p, const std::vector<std::size_t>& perm) {
  ProbabilityVector pv;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[perm[k]] == 0.0) continue;
    pv.support.push_back("w" + std::to_string(perm[k]));
    pv.probs.push_back(p[perm[k]]);
  }
  return pv;
}

Outcome jsd_correctness() {
  const auto t0 = Clock::now();
  const auto pairs = random_pairs(1000, 101);
  std::mt19937_64 rng(102);
  double worst = 0.0;
  for (const auto& [p, q] : pairs) {
    worst = std::max(worst, std::fabs(d_alpha(p, q, 2.0) - oracle::divergence(p, q, 2.0)));
    worst = std::max(worst, std::fabs(d_max(p, q, 2.0) - oracle::divergence_bound(p, q, 2.0)));
    worst = std::max(worst, std::fabs(h_alpha(p, 2.0) - oracle::entropy(p, 2.0)));
    worst = std::max(worst, std::fabs(d_lang(p, q) - oracle::normalized_divergence(p, q, 2.0)));
    // Sparse word-keyed vectors in shuffled order must give the same values.
    std::vector<std::size_t> perm(p.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto pv = as_vector(p, perm);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto qv = as_vector(q, perm);
    worst = std::max(worst, std::fabs(d_alpha(pv, qv, 2.0) - oracle::divergence(p, q, 2.0)));
    worst = std::max(worst, std::fabs(d_lang(pv, qv) - oracle::normalized_divergence(p, q, 2.0)));
  }
  const double elapsed = seconds_since(t0);
  Outcome o;
  o.pass = worst <= 1e-12 && elapsed < 5.0;
  o.detail = "max |diff| " + std::to_string(worst) + ", " + std::to_string(elapsed) + " s";
  return o;
}

Outcome normalization_identity() {
  const auto pairs = random_pairs(1000, 101);
  double worst = 0.0;
  bool endpoints = true;
  std::mt19937_64 rng(103);
  for (const auto& [p, q] : pairs) {
    worst = std::max(worst, std::fabs(d_lang_explicit(p, q) - d_lang(p, q)));
    endpoints = endpoints && d_lang(p, p) == 0.0 && d_lang(q, q) == 0.0;
    // Disjoint supports: p on the first block, q on the second.
    std::vector<double> a(p.size() + q.size(), 0.0);
    std::vector<double> b(p.size() + q.size(), 0.0);
    std::copy(p.begin(), p.end(), a.begin());
    std::copy(q.begin(), q.end(), b.begin() + static_cast<std::ptrdiff_t>(p.size()));
    endpoints = endpoints && d_lang(a, b) == 1.0;
    std::vector<std::size_t> perm(p.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    auto pv = as_vector(p, perm);
    auto qv = pv;
    for (auto& w : qv.support) w = "x" + w;
    endpoints = endpoints && d_lang(pv, qv) == 1.0 && d_lang(pv, pv) == 0.0;
  }
  Outcome o;
  o.pass = worst <= 1e-12 && endpoints;
  o.detail = "max |explicit - normalized| " + std::to_string(worst) + (endpoints ? ", endpoints exact" : ", endpoint mismatch");
  return o;
}

Outcome citation_metric() {
  std::mt19937_64 rng(201);
  double worst = 0.0;
  std::size_t mismatched_errors = 0;
  std::size_t asymmetric = 0;
  std::size_t moved = 0;
  for (int g = 0; g < 500; ++g) {
    const std::size_t n = 2 + rng() % 9;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < n; ++k) labels.push_back("f" + std::to_string(k));
    CitationGraph graph(labels);
    std::vector<std::uint64_t> counts(n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
      counts[k] = rng() % 4 == 0 ? 0 : rng() % 25;
      graph.add(k / n, k % n, counts[k]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double ref = oracle::citation_dissimilarity(counts, n, i, j);
        try {
          const double v = d_cite(graph, i, j);
          if (std::isnan(ref)) ++mismatched_errors;
          else worst = std::max(worst, std::fabs(v - ref));
          if (v != d_cite(graph, j, i)) ++asymmetric;
        } catch (const DegenerateCitationTerm&) {
          if (!std::isnan(ref)) ++mismatched_errors;
        }
      }
    }
    if (n < 3) continue;
    const std::size_t i = rng() % n;
    std::size_t j = rng() % n;
    while (j == i) j = rng() % n;
    double before = 0.0;
    try {
      before = d_cite(graph, i, j);
    } catch (const DegenerateCitationTerm&) {
      graph.add(i, j);
      before = d_cite(graph, i, j);
    }
    for (int e = 0; e < 100; ++e) {
      std::size_t t = rng() % n;
      std::size_t u = rng() % n;
      if (t == i || t == j || u == i || u == j) {
        --e;
        continue;
      }
      graph.add(t, u);
      if (d_cite(graph, i, j) != before) ++moved;
    }
  }
  Outcome o;
  o.pass = worst <= 1e-12 && mismatched_errors == 0 && asymmetric == 0 && moved == 0;
  o.detail = "max |diff| " + std::to_string(worst) + ", " + std::to_string(mismatched_errors) + " error mismatches, " +
             std::to_string(asymmetric) + " asymmetric, " + std::to_string(moved) + " changed by unrelated edges";
  return o;
}

Outcome tree_distance(const fs::path& data) {
  const auto tree = TaxonomyTree::load(data / "oecd_taxonomy.tsv");
  std::size_t pairs = 0;
  std::size_t wrong = 0;
  std::size_t out_of_range = 0;
  for (auto level : {Level::specialty, Level::discipline, Level::domain}) {
    const auto ids = tree.nodes_at(level);
    for (const auto& a : ids) {
      for (const auto& b : ids) {
        const int d = d_exp(tree, a, b);
        ++pairs;
        if (d != oracle::tree_distance(tree, a, b)) ++wrong;
        if (level == Level::specialty && (d < 0 || d > 3)) ++out_of_range;
      }
    }
  }
  Outcome o;
  o.pass = wrong == 0 && out_of_range == 0;
  o.detail = std::to_string(pairs) + " pairs, " + std::to_string(wrong) + " mismatches, " +
             std::to_string(out_of_range) + " specialty values outside {0,1,2,3}";
  return o;
}

bool same_sequence(const Dendrogram& a, const Dendrogram& b) {
  if (a.merges.size() != b.merges.size()) return false;
  for (std::size_t k = 0; k < a.merges.size(); ++k) {
    const auto& x = a.merges[k];
    const auto& y = b.merges[k];
    if (x.a != y.a || x.b != y.b || x.id != y.id || x.size != y.size) return false;
    if (std::fabs(x.height - y.height) > 1e-12) return false;
  }
  return true;
}

Outcome upgma_equivalence() {
  std::mt19937_64 rng(301);
  std::size_t mismatches = 0;
  std::size_t tie_trials = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    const bool ties = trial % 2 == 0;
    tie_trials += ties ? 1 : 0;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < n; ++k) labels.push_back("f" + std::to_string(k));
    DissimilarityMatrix m(labels);
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        d[i][j] = d[j][i] = ties ? static_cast<double>(1 + rng() % 3) : u(rng);
        m.set(i, j, d[i][j]);
      }
    }
    if (!same_sequence(upgma(m), oracle::group_average(d, labels))) ++mismatches;
  }
  DissimilarityMatrix three({"1", "2", "3"});
  three.set(0, 1, 0.1);
  three.set(0, 2, 0.5);
  three.set(1, 2, 0.5);
  const auto part = cut_at_percentile(upgma(three), 0.92);
  const bool hand = part == std::vector<std::size_t>{0, 0, 1};
  Outcome o;
  o.pass = mismatches == 0 && hand;
  o.detail = std::to_string(mismatches) + " of 200 trials differ (" + std::to_string(tie_trials) +
             " with ties); 3-leaf cut " + (hand ? "{1,2},{3}" : "wrong");
  return o;
}

PairedSample correlated_sample(std::mt19937_64& rng, std::size_t n, double spearman) {
  // Bivariate normal whose Spearman correlation is `spearman`.
  const double r = 2.0 * std::sin(M_PI * spearman / 6.0);
  std::normal_distribution<double> z(0.0, 1.0);
  PairedSample s;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = z(rng);
    const double b = r * a + std::sqrt(1.0 - r * r) * z(rng);
    s.pairs.push_back({"i" + std::to_string(k), "j", a, b});
  }
  return s;
}

Outcome rank_statistics() {
  std::mt19937_64 rng(401);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 5 + rng() % 60;
    std::vector<double> x(n);
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = static_cast<double>(1 + rng() % 3);
      y[k] = static_cast<double>(rng() % 10) / 10.0;
    }
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; })) x[0] += 1.0;
    if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) y[0] += 1.0;
    worst = std::max(worst, std::fabs(kendall_tau_b(x, y) - oracle::kendall_tau_b(x, y)));
    worst = std::max(worst, std::fabs(spearman_rho(x, y) - oracle::spearman_rho(x, y)));
  }

  BootstrapOptions opts;
  opts.n_boot = 1000;
  opts.seed = 402;
  const auto same = correlated_sample(rng, 200, 0.6);
  const double p_same = bootstrap_compare(same, same, opts).p_value;
  const auto low = correlated_sample(rng, 200, 0.5);
  const auto high = correlated_sample(rng, 200, 0.8);
  const double p_gap = bootstrap_compare(low, high, opts).p_value;

  Outcome o;
  o.pass = worst <= 1e-12 && p_same >= 0.45 && p_same <= 0.55 && p_gap < 0.05;
  o.detail = "max |diff| " + std::to_string(worst) + ", p(identical) " + std::to_string(p_same) +
             ", p(gap 0.3) " + std::to_string(p_gap);
  return o;
}

// Twelve fields over 24 years; every pair involving field "F00" drifts closer.
std::map<FieldPair, PairTimeSeries> drifting_fields(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> base(0.35, 0.65);
  std::normal_distribution<double> slope(0.0, 0.0008);
  std::normal_distribution<double> noise(0.0, 0.006);
  std::map<FieldPair, PairTimeSeries> out;
  for (int i = 0; i < 12; ++i) {
    for (int j = i + 1; j < 12; ++j) {
      char a[8];
      char b[8];
      std::snprintf(a, sizeof a, "F%02d", i);
      std::snprintf(b, sizeof b, "F%02d", j);
      PairTimeSeries s{a, b, {}};
      const double level = base(rng);
      const double trend = i == 0 ? -0.004 : slope(rng);
      for (int y = 1991; y <= 2014; ++y) {
        s.points.push_back({y, std::clamp(level + trend * (y - 1991) + noise(rng), 0.0, 1.0)});
      }
      out[{a, b}] = moving_average(s, 3);
    }
  }
  return out;
}

Outcome temporal() {
  std::mt19937_64 rng(501);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t broken = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    PairTimeSeries s{"a", "b", {}};
    const int first = 1985 + static_cast<int>(rng() % 6);
    for (int y = first; y <= 2014; ++y) s.points.push_back({y, u(rng)});
    const int t0 = first + 1;
    if (nu(s, t0, 2014, 0).nu != nu_yearly_sum(s, t0, 2014)) ++broken;
  }

  // Hand fixture: t = mean / (s / sqrt(n)); p-values from the t and exact
  // signed-rank distributions.
  const std::vector<double> x{0.012, -0.004, 0.021, 0.008, -0.011, 0.017, 0.005, -0.002, 0.014, 0.009};
  double mean = 0.0;
  for (double v : x) mean += v / 10.0;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double t_hand = mean / (std::sqrt(ss / 9.0) / std::sqrt(10.0));
  const auto t = one_sample_t_test(x);
  const auto w = wilcoxon_signed_rank(x);
  auto r4 = [](double v) { return std::round(v * 1e4) / 1e4; };
  const bool fixtures = r4(t.statistic) == r4(t_hand) && r4(t.p_value) == r4(0.0575430581) &&
                        w.statistic == 46.0 && r4(w.p_value) == r4(0.064453125);

  int recovered = 0;
  for (int run = 0; run < 100; ++run) {
    const auto series = drifting_fields(1000 + static_cast<std::uint64_t>(run));
    const auto sel = compute_nus(series, 1991, 2014, 12);
    const auto rep = tails(sel.values, 1.0);
    if (!rep.left_counts.empty() && rep.left_counts.front().first == "F00" &&
        (rep.left_counts.size() == 1 || rep.left_counts[1].second < rep.left_counts[0].second)) {
      ++recovered;
    }
  }
  Outcome o;
  o.pass = broken == 0 && fixtures && recovered >= 95;
  o.detail = std::to_string(broken) + " telescoping mismatches, fixtures " + (fixtures ? "match" : "differ") +
             " (t=" + std::to_string(t.statistic) + " p=" + std::to_string(t.p_value) + ", W+=" +
             std::to_string(w.statistic) + " p=" + std::to_string(w.p_value) + "), drifting field on top in " +
             std::to_string(recovered) + "/100";
  return o;
}

Outcome planted_hierarchy() {
  const auto t0 = Clock::now();
  const PipelineConfig cfg;
  int recovered = 0;
  for (int run = 0; run < 100; ++run) {
    const auto corpus = synth::planted_hierarchy({}, 7000 + static_cast<std::uint64_t>(run));
    std::map<std::string, std::vector<Document>> docs;
    for (const auto& a : corpus.articles) docs[a.specialty].push_back({a.title, a.abstract});
    std::vector<LabeledDistribution> fields;
    for (const auto& s : corpus.specialties) {
      fields.push_back({s, top_v_probabilities(count_documents(docs[s], cfg), 400)});
    }
    const auto part = cut_at_percentile(upgma(d_lang_matrix(fields)), 0.92);
    bool ok = true;
    for (std::size_t i = 0; i < part.size(); ++i) {
      for (std::size_t j = 0; j < part.size(); ++j) {
        const bool same_domain = corpus.specialty_domain[i] == corpus.specialty_domain[j];
        ok = ok && (part[i] == part[j]) == same_domain;
      }
    }
    recovered += ok ? 1 : 0;
  }
  const double elapsed = seconds_since(t0);
  Outcome o;
  o.pass = recovered >= 95 && elapsed < 60.0;
  o.detail = std::to_string(recovered) + "/100 runs recover the 3 domains, " + std::to_string(elapsed) + " s";
  return o;
}

Outcome throughput() {
  const auto docs = synth::abstracts(100000, 140, 901);
  const PipelineConfig cfg;
  const auto t0 = Clock::now();
  const auto model = count_documents(docs, cfg);
  const double elapsed = seconds_since(t0);
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  const double peak_gb = static_cast<double>(usage.ru_maxrss) / (1024.0 * 1024.0);
  Outcome o;
  o.pass = elapsed < 60.0 && peak_gb < 2.0;
  o.detail = std::to_string(model.total_tokens()) + " tokens counted in " + std::to_string(elapsed) + " s on " +
             std::to_string(worker_count()) + " workers, peak RSS " + std::to_string(peak_gb) + " GB";
  return o;
}

int run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int rc = cli::run(args, out, err);
  if (rc != 0) std::cerr << "fieldscope " << args.front() << " failed: " << err.str();
  return rc;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).generic_string()] = io::read_file(e.path());
  }
  return files;
}

bool fixture_pipeline(const fs::path& data, const fs::path& out) {
  const std::string f = (data / "fixture").string();
  const std::string o = out.string();
  const std::string cfg = (data / "pipeline.toml").string();
  return run_cli({"--config", cfg, "model", "--articles", f + "/articles.jsonl", "--taxonomy", f + "/taxonomy.tsv",
                  "--level", "specialty", "--v", "100", "--out", o + "/models"}) == 0 &&
         run_cli({"--config", cfg, "model", "--articles", f + "/articles.jsonl", "--taxonomy", f + "/taxonomy.tsv",
                  "--level", "discipline", "--per-year", "--v", "30", "--out", o + "/yearly"}) == 0 &&
         run_cli({"dexp", "--taxonomy", f + "/taxonomy.tsv", "--level", "specialty", "--out", o + "/dexp.csv"}) == 0 &&
         run_cli({"dcite", "--citations", f + "/citations.tsv", "--map", f + "/articles.jsonl", "--taxonomy",
                  f + "/taxonomy.tsv", "--level", "specialty", "--out", o + "/dcite.csv"}) == 0 &&
         run_cli({"dlang", "--models", o + "/models", "--v", "100", "--out", o + "/dlang.csv"}) == 0 &&
         run_cli({"--seed", "17", "correlate", "--x", o + "/dexp.csv", "--y", o + "/dlang.csv", "--bootstrap-against",
                  o + "/dcite.csv", "--nboot", "300", "--out", o + "/correlation.csv"}) == 0 &&
         run_cli({"cluster", "--matrix", o + "/dlang.csv", "--out", o + "/tree.nwk", "--partition-out",
                  o + "/clusters.csv"}) == 0 &&
         run_cli({"trends", "--models-by-year", o + "/yearly", "--v", "30", "--out", o + "/trends.csv",
                  "--summary-out", o + "/trends.json"}) == 0;
}

Outcome determinism(const fs::path& data) {
  setenv("SOURCE_DATE_EPOCH", "1420070400", 1);
  const fs::path out = fs::temp_directory_path() / "fieldscope_acceptance_run";
  std::map<std::string, std::string> first;
  std::map<std::string, std::string> second;
  bool ran = true;
  for (auto* target : {&first, &second}) {
    fs::remove_all(out);
    ran = ran && fixture_pipeline(data, out);
    *target = snapshot(out);
  }
  fs::remove_all(out);
  std::size_t differing = 0;
  for (const auto& [name, bytes] : first) {
    auto it = second.find(name);
    if (it == second.end() || it->second != bytes) ++differing;
  }
  Outcome o;
  o.pass = ran && !first.empty() && first.size() == second.size() && differing == 0;
  o.detail = std::to_string(first.size()) + " files, " + std::to_string(differing) + " differ" +
             (ran ? "" : ", pipeline failed");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path data = argc > 1 ? fs::path(argv[1]) : fs::path(FIELDSCOPE_DATA_DIR);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"JSD correctness", jsd_correctness},
      {"normalization identity", normalization_identity},
      {"citation metric", citation_metric},
      {"tree distance", [&] { return tree_distance(data); }},
      {"UPGMA", upgma_equivalence},
      {"rank statistics", rank_statistics},
      {"temporal", temporal},
      {"planted-hierarchy recovery", planted_hierarchy},
      {"throughput", throughput},
      {"determinism", [&] { return determinism(data); }},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS  " : "FAIL  ") << name << ": " << o.detail << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
