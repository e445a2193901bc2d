#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fieldscope/citation_metric.hpp"
#include "fieldscope/clustering.hpp"
#include "fieldscope/corpus_model.hpp"
#include "fieldscope/delimited.hpp"
#include "fieldscope/error.hpp"
#include "fieldscope/ingest.hpp"
#include "fieldscope/io.hpp"
#include "fieldscope/language_metric.hpp"
#include "fieldscope/rankstats.hpp"
#include "fieldscope/taxonomy.hpp"
#include "fieldscope/temporal.hpp"
#include "fieldscope/textpipe.hpp"
#include "json.hpp"

namespace fieldscope::cli {
namespace {

using delimited::format_double;

PipelineConfig pipeline(const Context& ctx) {
  return ctx.config ? PipelineConfig::load(*ctx.config) : PipelineConfig{};
}

void require_file(const fs::path& p) {
  if (!fs::is_regular_file(p)) fail(ErrorCategory::input_not_found, "no such file: " + p.string());
}

void require_dir(const fs::path& p) {
  if (!fs::is_directory(p)) fail(ErrorCategory::input_not_found, "no such directory: " + p.string());
}

fs::path manifest_path(const fs::path& out) { return fs::path(out.string() + ".manifest.json"); }

void finish(RunManifest m, const fs::path& where) {
  m.finished = utc_timestamp();
  io::write_atomic(where, m.to_json());
}

void write_matrix(const fs::path& out, const DissimilarityMatrix& m) {
  io::write_atomic(out, [&](std::ostream& os) { write_matrix_csv(os, m); });
  io::write_atomic(fs::path(out.string() + ".json"), matrix_sidecar_json(m));
}

DissimilarityMatrix load_matrix(const fs::path& p) {
  auto in = io::open_input(p);
  return read_matrix_csv(in);
}

// Model files in a directory, ordered by file name.
std::vector<fs::path> model_files(const fs::path& dir) {
  require_dir(dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".tsv") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string safe_name(const std::string& field) {
  std::string s = field;
  for (char& c : s) {
    if (c == '/' || c == '\\' || c == ' ' || c == ':') c = '_';
  }
  return s;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? sep : "") + v[k];
  return out;
}

}  // namespace

int tokenize(const Context& ctx, const TokenizeOptions& o) {
  const PipelineConfig cfg = pipeline(ctx);
  auto m = ctx.manifest(cfg.fingerprint());
  require_file(o.articles);
  m.add_input(o.articles);
  std::optional<TaxonomyTree> tree;
  if (o.taxonomy) {
    tree = TaxonomyTree::load(*o.taxonomy);
    m.add_input(*o.taxonomy);
  }
  IngestOptions opts{parse_year_range(o.years), o.strict};
  IngestCounters counters;
  io::write_atomic(o.out, [&](std::ostream& os) {
    os << "# id\tyear\tspecialty\ttokens\n";
    auto in = io::open_input(o.articles);
    counters = for_each_article(in, tree ? &*tree : nullptr, opts, [&](ArticleRecord&& r) {
      os << r.id << '\t' << r.year << '\t' << r.specialty << '\t' << join(normalize(r.title, r.abstract, cfg), " ") << '\n';
    });
  });
  finish(m, manifest_path(o.out));
  *ctx.err << "tokenize: " << counters.accepted << " accepted, " << counters.rejected() << " rejected ("
           << counters.malformed << " malformed, " << counters.duplicate << " duplicate, " << counters.rejected_year
           << " out of range, " << counters.rejected_specialty << " unknown specialty)\n";
  return 0;
}

namespace {

struct BuiltModel {
  fs::path relative;
  std::string field;
  std::string window;
  FrequencyModel model;
};

std::vector<BuiltModel> build_models(const ModelOptions& o, const PipelineConfig& cfg, IngestCounters& counters) {
  const auto tree = TaxonomyTree::load(o.taxonomy);
  const Level level = parse_level(o.level);
  const YearRange years = parse_year_range(o.years);
  auto set = load_articles(o.articles, &tree, {years, o.strict});
  counters = set.counters;

  // Documents per (field, window); ordered by field file order and window.
  std::map<std::pair<std::size_t, int>, std::vector<Document>> groups;
  std::unordered_map<std::string, std::size_t> rank;
  const auto fields = tree.nodes_at(level);
  for (std::size_t k = 0; k < fields.size(); ++k) rank[fields[k]] = k;
  for (auto& r : set.records) {
    const std::size_t f = rank.at(tree.ancestor_at(r.specialty, level));
    groups[{f, o.per_year ? r.year : 0}].push_back({std::move(r.title), std::move(r.abstract)});
  }

  std::vector<BuiltModel> out;
  for (auto& [key, docs] : groups) {
    BuiltModel b;
    b.field = fields[key.first];
    if (o.per_year) {
      b.window = std::to_string(key.second);
      b.relative = fs::path(b.window) / (safe_name(b.field) + ".tsv");
    } else {
      b.window = format_year_range(years);
      b.relative = safe_name(b.field) + ".tsv";
    }
    b.model = count_documents(docs, cfg);
    docs.clear();
    docs.shrink_to_fit();
    out.push_back(std::move(b));
  }
  return out;
}

void write_models(const fs::path& dir, const std::vector<BuiltModel>& models, std::size_t v) {
  fs::create_directories(dir);
  for (const auto& b : models) {
    io::write_atomic(dir / b.relative, [&](std::ostream& os) { write_model(os, b.model, {b.field, b.window}); });
  }
  io::write_atomic(dir / "index.csv", [&](std::ostream& os) {
    os << "field,window,file,total_tokens,v_available,meets_v\n";
    for (const auto& b : models) {
      os << delimited::join_csv({b.field, b.window, b.relative.generic_string()}) << ',' << b.model.total_tokens()
         << ',' << b.model.v_available() << ',' << (b.model.v_available() >= v ? "yes" : "no") << '\n';
    }
  });
}

}  // namespace

int model(const Context& ctx, const ModelOptions& o) {
  const PipelineConfig cfg = pipeline(ctx);
  auto m = ctx.manifest(cfg.fingerprint());
  require_file(o.articles);
  require_file(o.taxonomy);
  m.add_input(o.articles);
  m.add_input(o.taxonomy);

  // Optional cache of finished model directories, keyed by inputs and settings.
  std::optional<fs::path> cached;
  if (const char* cache = std::getenv("FIELDSCOPE_CACHE"); cache && *cache) {
    std::string key = m.config_hash;
    for (const auto& [path, digest] : m.input_digests) key += digest;
    cached = fs::path(cache) / io::sha256_hex(key);
  }

  if (cached && fs::is_directory(*cached)) {
    fs::create_directories(o.out);
    for (const auto& e : fs::recursive_directory_iterator(*cached)) {
      const auto rel = fs::relative(e.path(), *cached);
      if (e.is_directory()) {
        fs::create_directories(o.out / rel);
      } else {
        io::write_atomic(o.out / rel, io::read_file(e.path()));
      }
    }
    *ctx.err << "model: reused cached models from " << cached->string() << '\n';
  } else {
    IngestCounters counters;
    const auto models = build_models(o, cfg, counters);
    write_models(o.out, models, o.v);
    std::size_t short_fields = 0;
    for (const auto& b : models) short_fields += b.model.v_available() < o.v ? 1 : 0;
    *ctx.err << "model: " << counters.accepted << " articles, " << models.size() << " models, " << short_fields
             << " below V=" << o.v << '\n';
    if (cached) {
      const fs::path tmp = cached->string() + ".tmp";
      fs::remove_all(tmp);
      fs::create_directories(tmp.parent_path());
      fs::copy(o.out, tmp, fs::copy_options::recursive);
      fs::rename(tmp, *cached);
    }
  }
  finish(m, o.out / "manifest.json");
  return 0;
}

int dexp(const Context& ctx, const DexpOptions& o) {
  auto m = ctx.manifest();
  require_file(o.taxonomy);
  m.add_input(o.taxonomy);
  const auto tree = TaxonomyTree::load(o.taxonomy);
  write_matrix(o.out, d_exp_matrix(tree, parse_level(o.level)));
  finish(m, manifest_path(o.out));
  return 0;
}

int dcite(const Context& ctx, const DciteOptions& o) {
  auto m = ctx.manifest();
  for (const auto& p : {o.citations, o.map, o.taxonomy}) {
    require_file(p);
    m.add_input(p);
  }
  const auto tree = TaxonomyTree::load(o.taxonomy);
  const Level level = parse_level(o.level);
  auto set = load_articles(o.map, &tree, {parse_year_range(o.years), false});

  std::unordered_set<std::string> present;
  for (const auto& r : set.records) present.insert(tree.ancestor_at(r.specialty, level));
  std::vector<std::string> labels;
  for (const auto& f : tree.nodes_at(level)) {
    if (present.count(f)) labels.push_back(f);
  }
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < labels.size(); ++k) index[labels[k]] = k;
  std::unordered_map<std::string, std::size_t> article_field;
  std::unordered_set<std::string> ids;
  for (const auto& r : set.records) {
    article_field[r.id] = index.at(tree.ancestor_at(r.specialty, level));
    ids.insert(r.id);
  }

  auto edges = load_citations(o.citations, ids);
  AggregateCounters ac;
  const auto graph = aggregate(edges.edges, article_field, labels, &ac);
  auto matrix = d_cite_matrix(graph);
  matrix.metadata()["level"] = o.level;
  matrix.metadata()["years"] = o.years;
  write_matrix(o.out, matrix);
  if (o.graph_out) io::write_atomic(*o.graph_out, [&](std::ostream& os) { write_graph(os, graph); });
  finish(m, manifest_path(o.out));
  *ctx.err << "dcite: " << ac.counted << " citations counted, " << edges.counters.dropped_unknown
           << " with unknown endpoints, " << edges.counters.malformed << " malformed, " << matrix.errors().size()
           << " degenerate pairs\n";
  return 0;
}

int dlang(const Context& ctx, const DlangOptions& o) {
  auto m = ctx.manifest();
  const auto files = model_files(o.models);
  const CutoffMode mode = o.cutoff == "raw" ? CutoffMode::raw : CutoffMode::renormalize;
  std::vector<LabeledDistribution> fields;
  std::vector<std::string> excluded;
  std::set<std::string> windows;
  std::unordered_set<std::string> seen;
  for (const auto& f : files) {
    m.add_input(f);
    auto in = io::open_input(f);
    ModelFileHeader header;
    const auto model = read_model(in, &header);
    const std::string label = header.field.empty() ? f.stem().string() : header.field;
    if (!seen.insert(label).second) fail(ErrorCategory::duplicate_id, "two models for field '" + label + "'");
    windows.insert(header.window);
    try {
      fields.push_back({label, top_v_probabilities(model, o.v, mode)});
    } catch (const InsufficientVocabulary& e) {
      excluded.push_back(label);
      *ctx.err << "dlang: excluding " << label << ": " << e.what() << '\n';
    }
  }
  if (fields.empty()) fail(ErrorCategory::insufficient_vocabulary, "no field clears V=" + std::to_string(o.v));

  auto matrix = o.alpha == 2.0 ? d_lang_matrix(fields) : d_alpha_matrix(fields, o.alpha);
  if (o.alpha != 2.0) matrix.metadata()["normalized"] = "false";
  matrix.metadata()["V"] = std::to_string(o.v);
  matrix.metadata()["cutoff"] = o.cutoff;
  matrix.metadata()["window"] = join(std::vector<std::string>(windows.begin(), windows.end()), ";");
  matrix.metadata()["excluded"] = join(excluded, ",");
  write_matrix(o.out, matrix);
  finish(m, manifest_path(o.out));
  return 0;
}

int correlate(const Context& ctx, const CorrelateOptions& o) {
  auto m = ctx.manifest();
  require_file(o.x);
  require_file(o.y);
  m.add_input(o.x);
  m.add_input(o.y);
  const auto mx = load_matrix(o.x);
  const auto my = load_matrix(o.y);
  const auto a = paired_sample(mx, my);

  struct Row {
    std::string x, y;
    double tau, rho;
    std::size_t n, excluded;
    std::optional<double> p;
  };
  std::vector<Row> rows{{o.x.stem().string(), o.y.stem().string(), kendall_tau(a), spearman_rho(a), a.size(), a.excluded, {}}};

  if (o.bootstrap_against) {
    require_file(*o.bootstrap_against);
    m.add_input(*o.bootstrap_against);
    const auto mz = load_matrix(*o.bootstrap_against);
    const auto b = paired_sample(mx, mz);
    BootstrapOptions bo;
    bo.n_boot = o.nboot;
    bo.statistic = o.statistic == "rho" ? Statistic::rho : Statistic::tau;
    bo.seed = ctx.seed;
    bo.two_sided = o.two_sided;
    const auto res = bootstrap_compare(a, b, bo);
    rows.front().p = res.p_value;
    rows.push_back({o.x.stem().string(), o.bootstrap_against->stem().string(), kendall_tau(b), spearman_rho(b),
                    b.size(), b.excluded, {}});
    *ctx.err << "correlate: bootstrap p=" << format_double(res.p_value) << " (mean delta "
             << format_double(res.mean_delta) << ", " << res.redraws << " redraws)\n";
  }

  io::write_atomic(o.out, [&](std::ostream& os) {
    os << "measure_x,measure_y,tau,rho,n_pairs,excluded,bootstrap_p\n";
    for (const auto& r : rows) {
      os << delimited::join_csv({r.x, r.y}) << ',' << format_double(r.tau) << ',' << format_double(r.rho) << ','
         << r.n << ',' << r.excluded << ',' << (r.p ? format_double(*r.p) : "NA") << '\n';
    }
  });
  if (o.per_field) {
    io::write_atomic(*o.per_field, [&](std::ostream& os) {
      os << "field,tau\n";
      for (std::size_t i = 0; i < mx.size(); ++i) {
        std::string value = "NA";
        try {
          value = format_double(per_field_correlation(mx, my, i));
        } catch (const Error& e) {
          if (e.category() == ErrorCategory::unknown_label) throw;
        }
        os << delimited::join_csv({mx.labels()[i]}) << ',' << value << '\n';
      }
    });
  }
  finish(m, manifest_path(o.out));
  return 0;
}

int cluster(const Context& ctx, const ClusterOptions& o) {
  auto m = ctx.manifest();
  require_file(o.matrix);
  m.add_input(o.matrix);
  const auto matrix = load_matrix(o.matrix);
  const auto tree = upgma(matrix);
  const CutRule rule = o.cut_rule == "nearest-rank" ? CutRule::nearest_rank : CutRule::fraction_of_max;
  if (!tree.monotone) *ctx.err << "cluster: warning: merge heights are not monotone\n";

  io::write_atomic(o.out, to_newick(tree) + "\n");
  if (o.merges_out) io::write_atomic(*o.merges_out, [&](std::ostream& os) { write_merge_table(os, tree); });
  if (o.partition_out) {
    const auto part = cut_at_percentile(tree, o.cut_percentile, rule);
    io::write_atomic(*o.partition_out, [&](std::ostream& os) {
      os << "# threshold=" << format_double(cut_threshold(tree, o.cut_percentile, rule)) << '\n';
      os << "field,cluster\n";
      for (std::size_t k = 0; k < part.size(); ++k) os << delimited::join_csv({tree.leaves[k]}) << ',' << part[k] << '\n';
    });
  }
  finish(m, manifest_path(o.out));
  return 0;
}

int trends(const Context& ctx, const TrendsOptions& o) {
  auto m = ctx.manifest();
  require_dir(o.models_by_year);
  const YearRange years = parse_year_range(o.years);

  std::vector<std::pair<int, fs::path>> year_dirs;
  for (const auto& e : fs::directory_iterator(o.models_by_year)) {
    if (!e.is_directory()) continue;
    const std::string name = e.path().filename().string();
    if (name.empty() || !std::all_of(name.begin(), name.end(), [](char c) { return c >= '0' && c <= '9'; })) continue;
    const int year = std::stoi(name);
    if (years.contains(year)) year_dirs.emplace_back(year, e.path());
  }
  std::sort(year_dirs.begin(), year_dirs.end());

  YearlyModels models;
  for (const auto& [year, dir] : year_dirs) {
    for (const auto& f : model_files(dir)) {
      m.add_input(f);
      auto in = io::open_input(f);
      ModelFileHeader header;
      auto model = read_model(in, &header);
      models[year][header.field.empty() ? f.stem().string() : header.field] = std::move(model);
    }
  }

  auto raw = yearly_series(models, o.v);
  std::map<FieldPair, PairTimeSeries> smooth;
  for (const auto& [pair, s] : raw) smooth[pair] = moving_average(s, o.ma_window);
  const auto selection = compute_nus(smooth, years.first, years.last, o.min_history);

  io::write_atomic(o.out, [&](std::ostream& os) {
    os << "field_i,field_j,t_start,tf,nu,span\n";
    for (const auto& s : selection.values) {
      os << delimited::join_csv({s.field_i, s.field_j}) << ',' << s.t_start << ',' << s.tf << ','
         << format_double(s.nu) << ',' << s.span_years << '\n';
    }
  });
  if (o.series_out) {
    io::write_atomic(*o.series_out, [&](std::ostream& os) {
      os << "field_i,field_j,year,d_lang,d_lang_ma\n";
      for (const auto& [pair, s] : raw) {
        const auto& sm = smooth.at(pair);
        for (std::size_t k = 0; k < s.points.size(); ++k) {
          os << delimited::join_csv({pair.first, pair.second}) << ',' << s.points[k].year << ','
             << format_double(s.points[k].value) << ',' << format_double(sm.points[k].value) << '\n';
        }
      }
    });
  }
  if (o.summary_out) {
    nlohmann::ordered_json j;
    j["pairs"] = selection.values.size();
    j["short_history"] = selection.short_history;
    j["missing_endpoint"] = selection.missing_endpoint;
    try {
      const auto d = nu_distribution(selection.values);
      j["mean"] = d.mean;
      j["std"] = d.std;
      j["t_statistic"] = d.t_test.statistic;
      j["t_p_value"] = d.t_test.p_value;
      j["wilcoxon_statistic"] = d.wilcoxon.statistic;
      j["wilcoxon_p_value"] = d.wilcoxon.p_value;
      j["wilcoxon_exact"] = d.wilcoxon.exact;
      const auto t = tails(selection.values, o.k_sigma);
      auto pairs = [](const std::vector<NuStatistic>& v) {
        auto a = nlohmann::ordered_json::array();
        for (const auto& s : v) a.push_back({{"field_i", s.field_i}, {"field_j", s.field_j}, {"nu", s.nu}});
        return a;
      };
      auto counts = [](const std::vector<std::pair<std::string, std::size_t>>& v) {
        auto a = nlohmann::ordered_json::array();
        for (const auto& [f, c] : v) a.push_back({{"field", f}, {"count", c}});
        return a;
      };
      j["tails"] = {{"k_sigma", o.k_sigma}, {"low", t.low}, {"high", t.high}, {"left", pairs(t.left)},
                    {"right", pairs(t.right)}, {"left_counts", counts(t.left_counts)},
                    {"right_counts", counts(t.right_counts)}};
    } catch (const Error& e) {
      j["error"] = std::string(category_name(e.category())) + ": " + e.what();
    }
    io::write_atomic(*o.summary_out, j.dump(2) + "\n");
  }
  finish(m, manifest_path(o.out));
  *ctx.err << "trends: " << selection.values.size() << " pairs, " << selection.short_history << " too short, "
           << selection.missing_endpoint << " missing endpoints\n";
  return 0;
}

}  // namespace fieldscope::cli
