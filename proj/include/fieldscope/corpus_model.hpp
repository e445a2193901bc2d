#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fieldscope/execution.hpp"
#include "fieldscope/textpipe.hpp"

namespace fieldscope {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

// Word-type counts of one corpus.
class FrequencyModel {
 public:
  using CountMap = std::unordered_map<std::string, std::uint64_t, StringHash, std::equal_to<>>;

  void add(std::string_view word, std::uint64_t n = 1);
  void add(std::string&& word, std::uint64_t n = 1);
  void add(const char* word, std::uint64_t n = 1) { add(std::string_view(word), n); }
  void merge(const FrequencyModel& other);

  std::uint64_t count(std::string_view word) const;
  std::uint64_t total_tokens() const noexcept { return total_; }
  std::size_t v_available() const noexcept { return counts_.size(); }
  const CountMap& counts() const noexcept { return counts_; }

  // Count descending, then word ascending.
  std::vector<std::pair<std::string, std::uint64_t>> sorted_entries() const;

  friend bool operator==(const FrequencyModel& a, const FrequencyModel& b) {
    return a.total_ == b.total_ && a.counts_ == b.counts_;
  }

 private:
  CountMap counts_;
  std::uint64_t total_ = 0;
};

FrequencyModel build_model(std::span<const TokenList> documents);
FrequencyModel merge(std::span<const FrequencyModel> models);

struct Document {
  std::string title;
  std::string abstract;
};

// Tokenizes every document and counts the tokens without materializing token
// lists. The parallel path keeps one model per worker and sums them, which is
// exact, so both paths return equal models.
FrequencyModel count_documents(std::span<const Document> documents, const PipelineConfig& cfg,
                               Execution exec = Execution::parallel);

// Probability mass over a support of word types, ordered by descending count.
struct ProbabilityVector {
  std::vector<std::string> support;
  std::vector<double> probs;
  // False when probabilities were kept relative to the full token total, so
  // they sum to less than one.
  bool normalized = true;

  std::size_t size() const noexcept { return probs.size(); }
};

enum class CutoffMode {
  renormalize,  // probabilities over the kept types sum to one
  raw,          // count / total_tokens of the whole corpus
};

inline constexpr std::size_t kDefaultVocabulary = 20000;

// Keeps the V most frequent types (ties broken by ascending word). Throws
// InsufficientVocabulary when the model has fewer than V types.
ProbabilityVector top_v_probabilities(const FrequencyModel& model,
                                      std::size_t v = kDefaultVocabulary,
                                      CutoffMode mode = CutoffMode::renormalize);

struct SelfDissimilarity {
  double mean = 0.0;
  double relative_std = 0.0;
  std::vector<double> values;
  // Set when a single split makes the spread undefined (reported as zero).
  bool degenerate = false;
};

// Splits the documents into two random halves `n_splits` times and measures
// d_lang between the halves' top-V distributions.
SelfDissimilarity self_dissimilarity(std::span<const TokenList> documents, std::size_t v,
                                     std::size_t n_splits, std::uint64_t seed);

// Text persistence: `# field=`, `# window=`, `# total_tokens=` header lines
// followed by `word<TAB>count` rows in sorted_entries() order.
struct ModelFileHeader {
  std::string field;
  std::string window;
};

void write_model(std::ostream& out, const FrequencyModel& model, const ModelFileHeader& header);
FrequencyModel read_model(std::istream& in, ModelFileHeader* header = nullptr);

}  // namespace fieldscope
