#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <regex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fieldscope/lemmatizer.hpp"

namespace fieldscope {

using TokenList = std::vector<std::string>;
using ContractionTable = std::unordered_map<std::string, std::string>;

// `contraction<TAB>expansion` rows (a comma also separates); '#' lines ignored.
ContractionTable parse_contractions(std::istream& in);
ContractionTable default_contractions();

// One lowercase token per line.
std::unordered_set<std::string> parse_stopwords(std::istream& in);
std::unordered_set<std::string> default_stopwords();

class PipelineConfig {
 public:
  // Shipped stop words and contractions, suffix lemmatizer, no copyright patterns.
  PipelineConfig();

  // TOML file; every key optional:
  //   stopwords = "path"           contractions = "path"
  //   lemmatizer = "suffix"        keep_hyphens = true
  //   copyright_patterns = ["\\(c\\)\\s*\\d{4}", ...]
  // Relative paths resolve against the config file's directory.
  static PipelineConfig load(const std::filesystem::path& path);

  std::unordered_set<std::string> stopwords;
  ContractionTable contractions;
  bool keep_hyphens = true;

  void set_copyright_patterns(std::vector<std::string> patterns);
  const std::vector<std::string>& copyright_patterns() const { return pattern_text_; }
  const std::vector<std::regex>& copyright_regexes() const { return patterns_; }

  void set_lemmatizer(std::string_view name);
  const std::string& lemmatizer_name() const { return lemmatizer_name_; }
  const Lemmatizer& lemmatizer() const { return *lemmatizer_; }

  // Stable digest of every setting, recorded in run manifests.
  std::string fingerprint() const;

 private:
  std::vector<std::string> pattern_text_;
  std::vector<std::regex> patterns_;
  std::string lemmatizer_name_;
  std::shared_ptr<const Lemmatizer> lemmatizer_;
};

// Cuts the abstract at the earliest match of any copyright pattern.
std::string strip_copyright(std::string_view abstract, const PipelineConfig& cfg);

// Lowercases ASCII, Latin-1, Greek and Cyrillic letters; curly apostrophes
// become ASCII.
std::string lowercase(std::string_view text);

std::string expand_contractions(std::string_view text, const ContractionTable& table);
std::string expand_contractions(std::string_view text);

// Every character that is neither alphanumeric nor a hyphen becomes a split
// point. With keep_hyphens=false hyphens split too.
std::vector<std::string> split_symbols(std::string_view token, bool keep_hyphens = true);

// Digits with separators (. , : / - + %) and an optional exponent, e.g.
// "1990", "3.5e-2", "1991-2014".
bool is_number(std::string_view token);
bool is_single_letter(std::string_view token);

// Runs steps 3-8 on already concatenated text and streams tokens to `sink`.
void normalize_text(std::string_view text, const PipelineConfig& cfg,
                    const std::function<void(std::string&&)>& sink);
TokenList normalize_text(std::string_view text, const PipelineConfig& cfg);

// Full pipeline: copyright removal, title+abstract concatenation, lowercase,
// contractions, tokenization with lemmatization, symbol splitting, number and
// single-letter removal, stop-word removal.
TokenList normalize(std::string_view title, std::string_view abstract, const PipelineConfig& cfg);

}  // namespace fieldscope
