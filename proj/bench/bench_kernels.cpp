// Serial reference vs OpenMP path for the data-parallel kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "fieldscope/citation_metric.hpp"
#include "fieldscope/corpus_model.hpp"
#include "fieldscope/language_metric.hpp"
#include "fieldscope/rankstats.hpp"
#include "fieldscope/synth.hpp"

using namespace fieldscope;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::serial : Execution::parallel; }

const std::vector<Document>& abstracts() {
  static const auto docs = synth::abstracts(5000, 150, 1);
  return docs;
}

std::vector<LabeledDistribution> fields(std::size_t n, std::size_t v) {
  std::mt19937_64 rng(2);
  std::vector<LabeledDistribution> out;
  for (std::size_t f = 0; f < n; ++f) {
    const auto p = synth::random_distribution(rng, v, 0.1);
    ProbabilityVector pv;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k] == 0.0) continue;
      pv.support.push_back("w" + std::to_string((k * 31 + f * 17) % (v + v / 2)));
      pv.probs.push_back(p[k]);
    }
    out.push_back({"f" + std::to_string(f), pv});
  }
  return out;
}

void BM_CountDocuments(benchmark::State& state) {
  const PipelineConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(count_documents(abstracts(), cfg, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(abstracts().size()));
}
BENCHMARK(BM_CountDocuments)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DLangMatrix(benchmark::State& state) {
  const auto f = fields(40, 5000);
  for (auto _ : state) benchmark::DoNotOptimize(d_lang_matrix(f, mode(state)));
}
BENCHMARK(BM_DLangMatrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DCiteMatrix(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<std::string> labels;
  for (int k = 0; k < 400; ++k) labels.push_back("f" + std::to_string(k));
  CitationGraph g(labels);
  for (int k = 0; k < 200000; ++k) g.add(rng() % 400, rng() % 400);
  for (auto _ : state) benchmark::DoNotOptimize(d_cite_matrix(g, mode(state)));
}
BENCHMARK(BM_DCiteMatrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Bootstrap(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> z(0.0, 1.0);
  PairedSample a;
  PairedSample b;
  for (int k = 0; k < 2000; ++k) {
    const double x = z(rng);
    a.pairs.push_back({"i", "j", x, x + z(rng)});
    b.pairs.push_back({"i", "j", x, 0.5 * x + z(rng)});
  }
  BootstrapOptions opts;
  opts.n_boot = 200;
  opts.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_compare(a, b, opts));
}
BENCHMARK(BM_Bootstrap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
