#include "fieldscope/cli.hpp"

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "fieldscope/error.hpp"
#include "fieldscope/execution.hpp"
#include "fieldscope/io.hpp"

namespace fieldscope::cli {

RunManifest Context::manifest(const std::string& extra_config) const {
  RunManifest m;
  m.command_line = args;
  m.config_hash = io::sha256_hex(options_text + extra_config);
  m.seed = seed;
  m.started = utc_timestamp();
  return m;
}

namespace {

void add_years(CLI::App* sub, std::string& years) {
  sub->add_option("--years", years, "Inclusive year range A:B")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Measures dissimilarity between scientific fields from expert classification, citations and language."};
  app.name("fieldscope");
  app.set_version_flag("--version", std::string(FIELDSCOPE_VERSION));
  app.require_subcommand(1);

  Context ctx;
  ctx.args = args;
  ctx.out = &out;
  ctx.err = &err;
  std::string config;
  app.add_option("--seed", ctx.seed, "Seed for every stochastic step")->capture_default_str();
  app.add_option("--jobs", ctx.jobs, "Worker threads (0 = all logical cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--config", config, "Pipeline configuration (TOML)");

  TokenizeOptions tok;
  auto* s_tok = app.add_subcommand("tokenize", "Normalize article text into token lists");
  s_tok->add_option("--articles", tok.articles, "Article records (JSON lines)")->required();
  s_tok->add_option("--taxonomy", tok.taxonomy, "Classification tree; drops unknown specialties");
  add_years(s_tok, tok.years);
  s_tok->add_flag("--strict", tok.strict, "Fail on malformed or duplicate records");
  s_tok->add_option("--out", tok.out, "Token table")->required();

  ModelOptions mod;
  auto* s_mod = app.add_subcommand("model", "Build word-frequency models per field");
  s_mod->add_option("--articles", mod.articles)->required();
  s_mod->add_option("--taxonomy", mod.taxonomy)->required();
  s_mod->add_option("--level", mod.level)->check(CLI::IsMember({"specialty", "discipline", "domain"}))->capture_default_str();
  add_years(s_mod, mod.years);
  s_mod->add_option("--v", mod.v, "Vocabulary cutoff checked per field")->capture_default_str();
  s_mod->add_flag("--per-year", mod.per_year, "One model per field and year, in <out>/<year>/");
  s_mod->add_flag("--strict", mod.strict);
  s_mod->add_option("--out", mod.out, "Output directory")->required();

  DexpOptions dx;
  auto* s_dexp = app.add_subcommand("dexp", "Tree distance between taxonomy nodes");
  s_dexp->add_option("--taxonomy", dx.taxonomy)->required();
  s_dexp->add_option("--level", dx.level)->check(CLI::IsMember({"specialty", "discipline", "domain"}))->capture_default_str();
  s_dexp->add_option("--out", dx.out)->required();

  DciteOptions dc;
  auto* s_dcite = app.add_subcommand("dcite", "Citation dissimilarity between fields");
  s_dcite->add_option("--citations", dc.citations, "Edge list citing_id,cited_id")->required();
  s_dcite->add_option("--map", dc.map, "Article records mapping ids to specialties")->required();
  s_dcite->add_option("--taxonomy", dc.taxonomy)->required();
  s_dcite->add_option("--level", dc.level)->check(CLI::IsMember({"specialty", "discipline", "domain"}))->capture_default_str();
  add_years(s_dcite, dc.years);
  s_dcite->add_option("--graph-out", dc.graph_out, "Aggregated field-level counts");
  s_dcite->add_option("--out", dc.out)->required();

  DlangOptions dl;
  auto* s_dlang = app.add_subcommand("dlang", "Language dissimilarity between field models");
  s_dlang->add_option("--models", dl.models, "Directory written by `model`")->required();
  s_dlang->add_option("--alpha", dl.alpha, "Entropy order; only 2 is normalized")->capture_default_str();
  s_dlang->add_option("--v", dl.v)->capture_default_str();
  s_dlang->add_option("--cutoff", dl.cutoff)->check(CLI::IsMember({"renormalize", "raw"}))->capture_default_str();
  s_dlang->add_option("--out", dl.out)->required();

  CorrelateOptions co;
  auto* s_cor = app.add_subcommand("correlate", "Rank correlation between two dissimilarity matrices");
  s_cor->add_option("--x", co.x)->required();
  s_cor->add_option("--y", co.y)->required();
  s_cor->add_option("--per-field", co.per_field, "Write per-field Kendall tau here");
  s_cor->add_option("--bootstrap-against", co.bootstrap_against,
                    "Test whether corr(x,y) is below corr(x,this matrix)");
  s_cor->add_option("--nboot", co.nboot)->capture_default_str();
  s_cor->add_option("--statistic", co.statistic)->check(CLI::IsMember({"tau", "rho"}))->capture_default_str();
  s_cor->add_flag("--two-sided", co.two_sided);
  s_cor->add_option("--out", co.out)->required();

  ClusterOptions cl;
  auto* s_cl = app.add_subcommand("cluster", "Group-average clustering of a matrix");
  s_cl->add_option("--matrix", cl.matrix)->required();
  s_cl->add_option("--cut-percentile", cl.cut_percentile)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  s_cl->add_option("--cut-rule", cl.cut_rule)->check(CLI::IsMember({"fraction-of-max", "nearest-rank"}))->capture_default_str();
  s_cl->add_option("--out", cl.out, "Newick tree")->required();
  s_cl->add_option("--merges-out", cl.merges_out, "Merge table");
  s_cl->add_option("--partition-out", cl.partition_out, "Cluster per field");

  TrendsOptions tr;
  auto* s_tr = app.add_subcommand("trends", "Yearly language dissimilarity trends between fields");
  s_tr->add_option("--models-by-year", tr.models_by_year, "Directory written by `model --per-year`")->required();
  s_tr->add_option("--v", tr.v)->capture_default_str();
  add_years(s_tr, tr.years);
  s_tr->add_option("--min-history", tr.min_history)->capture_default_str();
  s_tr->add_option("--ma-window", tr.ma_window)->capture_default_str();
  s_tr->add_option("--k-sigma", tr.k_sigma)->capture_default_str();
  s_tr->add_option("--out", tr.out, "Trend table")->required();
  s_tr->add_option("--series-out", tr.series_out, "Smoothed yearly series");
  s_tr->add_option("--summary-out", tr.summary_out, "Distribution tests and tails (JSON)");

  auto* s_self = app.add_subcommand("selftest", "Run the built-in analytic checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << FIELDSCOPE_VERSION << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  if (!config.empty()) ctx.config = config;
  try {
    set_worker_count(ctx.jobs);
    CLI::App* chosen = app.get_subcommands().front();
    ctx.options_text = chosen->get_name() + "\n" + chosen->config_to_str(true, false);
    if (chosen == s_tok) return tokenize(ctx, tok);
    if (chosen == s_mod) return model(ctx, mod);
    if (chosen == s_dexp) return dexp(ctx, dx);
    if (chosen == s_dcite) return dcite(ctx, dc);
    if (chosen == s_dlang) return dlang(ctx, dl);
    if (chosen == s_cor) return correlate(ctx, co);
    if (chosen == s_cl) return cluster(ctx, cl);
    if (chosen == s_tr) return trends(ctx, tr);
    if (chosen == s_self) return selftest(ctx);
  } catch (const Error& e) {
    err << "error[" << category_name(e.category()) << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace fieldscope::cli
