#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fieldscope/manifest.hpp"

namespace fieldscope::cli {

namespace fs = std::filesystem;

// State shared by every subcommand.
struct Context {
  std::vector<std::string> args;
  std::uint64_t seed = 1;
  int jobs = 0;
  std::optional<fs::path> config;
  std::string options_text;  // resolved subcommand options, hashed into manifests
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  RunManifest manifest(const std::string& extra_config = {}) const;
};

struct TokenizeOptions {
  fs::path articles;
  std::optional<fs::path> taxonomy;
  std::string years = "1991:2014";
  bool strict = false;
  fs::path out;
};

struct ModelOptions {
  fs::path articles;
  fs::path taxonomy;
  std::string level = "discipline";
  std::string years = "1991:2014";
  std::size_t v = 20000;
  bool per_year = false;
  bool strict = false;
  fs::path out;
};

struct DexpOptions {
  fs::path taxonomy;
  std::string level = "specialty";
  fs::path out;
};

struct DciteOptions {
  fs::path citations;
  fs::path map;
  fs::path taxonomy;
  std::string level = "specialty";
  std::string years = "1991:2014";
  std::optional<fs::path> graph_out;
  fs::path out;
};

struct DlangOptions {
  fs::path models;
  double alpha = 2.0;
  std::size_t v = 20000;
  std::string cutoff = "renormalize";
  fs::path out;
};

struct CorrelateOptions {
  fs::path x;
  fs::path y;
  std::optional<fs::path> per_field;
  std::optional<fs::path> bootstrap_against;
  std::size_t nboot = 1000;
  std::string statistic = "tau";
  bool two_sided = false;
  fs::path out;
};

struct ClusterOptions {
  fs::path matrix;
  double cut_percentile = 0.92;
  std::string cut_rule = "fraction-of-max";
  fs::path out;
  std::optional<fs::path> merges_out;
  std::optional<fs::path> partition_out;
};

struct TrendsOptions {
  fs::path models_by_year;
  std::size_t v = 20000;
  std::string years = "1991:2014";
  int min_history = 12;
  int ma_window = 3;
  double k_sigma = 1.0;
  fs::path out;
  std::optional<fs::path> series_out;
  std::optional<fs::path> summary_out;
};

int tokenize(const Context& ctx, const TokenizeOptions& o);
int model(const Context& ctx, const ModelOptions& o);
int dexp(const Context& ctx, const DexpOptions& o);
int dcite(const Context& ctx, const DciteOptions& o);
int dlang(const Context& ctx, const DlangOptions& o);
int correlate(const Context& ctx, const CorrelateOptions& o);
int cluster(const Context& ctx, const ClusterOptions& o);
int trends(const Context& ctx, const TrendsOptions& o);

// Runs the analytic identities and oracle comparisons; prints one line per
// check and returns 0 when all pass.
int selftest(const Context& ctx);

}  // namespace fieldscope::cli
