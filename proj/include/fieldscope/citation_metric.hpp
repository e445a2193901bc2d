#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fieldscope/dissimilarity_matrix.hpp"
#include "fieldscope/execution.hpp"
#include "fieldscope/ingest.hpp"

namespace fieldscope {

// Field-level citation counts: at(i, j) is the number of citations from
// papers of field i to papers of field j. The diagonal holds within-field
// citations.
class CitationGraph {
 public:
  CitationGraph() = default;
  explicit CitationGraph(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::uint64_t at(std::size_t from, std::size_t to) const { return counts_[from * size() + to]; }
  void add(std::size_t from, std::size_t to, std::uint64_t n = 1) { counts_[from * size() + to] += n; }

  std::uint64_t out_total(std::size_t field) const;
  std::uint64_t in_total(std::size_t field) const;

  friend bool operator==(const CitationGraph&, const CitationGraph&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<std::uint64_t> counts_;
};

struct AggregateCounters {
  std::size_t edges = 0;
  std::size_t counted = 0;
  std::size_t unmapped = 0;
};

// Increments c[field(citing)][field(cited)] once per edge; edges with an
// endpoint missing from `article_field` are skipped and counted.
CitationGraph aggregate(std::span<const CitationEdge> edges,
                        const std::unordered_map<std::string, std::size_t>& article_field,
                        std::vector<std::string> labels, AggregateCounters* counters = nullptr);

// Symmetrized Jaccard-like dissimilarity. With row totals R and column totals
// K, the directed term i->j is (R_i + K_j - 2 c_ij) / (R_i + K_j - c_ij), and
// the result averages i->j and j->i. Zero on the diagonal. Throws
// DegenerateCitationTerm when a term's denominator is zero.
double d_cite(const CitationGraph& graph, std::size_t i, std::size_t j);

// Precomputed row/column totals so each pair costs O(1).
class CitationDissimilarity {
 public:
  explicit CitationDissimilarity(const CitationGraph& graph);
  double operator()(std::size_t i, std::size_t j) const;

 private:
  const CitationGraph* graph_;
  std::vector<std::uint64_t> out_;
  std::vector<std::uint64_t> in_;
};

DissimilarityMatrix d_cite_matrix(const CitationGraph& graph, Execution exec = Execution::parallel);

// `# fields: a,b,c` header then `field_i,field_j,count` rows for non-zero cells.
void write_graph(std::ostream& out, const CitationGraph& graph);
CitationGraph read_graph(std::istream& in);

}  // namespace fieldscope
