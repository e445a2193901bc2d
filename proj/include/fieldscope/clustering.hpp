#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fieldscope/dissimilarity_matrix.hpp"

namespace fieldscope {

// Leaves carry cluster ids 0..N-1; merge k creates id N+k.
struct Merge {
  std::size_t a = 0;
  std::size_t b = 0;
  double height = 0.0;
  std::size_t id = 0;
  std::size_t size = 0;

  friend bool operator==(const Merge&, const Merge&) = default;
};

struct Dendrogram {
  std::vector<std::string> leaves;
  std::vector<Merge> merges;
  // False if some merge height is below its predecessor.
  bool monotone = true;

  friend bool operator==(const Dendrogram& x, const Dendrogram& y) {
    return x.leaves == y.leaves && x.merges == y.merges;
  }
};

// Group-average (UPGMA) agglomeration. At each step the pair of clusters with
// the smallest mean pairwise dissimilarity merges; ties go to the
// lexicographically smallest (a, b) with a < b. Throws on flagged cells.
Dendrogram upgma(const DissimilarityMatrix& matrix);

enum class CutRule {
  // threshold = percentile * max merge height; merges with height <= threshold apply
  fraction_of_max,
  // threshold = nearest-rank percentile of the merge heights; merges with
  // height < threshold apply (percentile 1 applies every merge)
  nearest_rank,
};

double cut_threshold(const Dendrogram& d, double percentile, CutRule rule);

// Cluster index per leaf, numbered by first appearance in leaf order.
std::vector<std::size_t> cut_at_percentile(const Dendrogram& d, double percentile = 0.92,
                                           CutRule rule = CutRule::fraction_of_max);

// Newick with branch lengths; NHX comments carry the exact cluster ids and
// heights so parse_newick(to_newick(d)) == d. Example for two leaves:
//   (A:0.4[&&NHX:id=0],B:0.4[&&NHX:id=1])[&&NHX:id=2:h=0.4];
std::string to_newick(const Dendrogram& d);
Dendrogram parse_newick(std::string_view text);

// `# leaves: <csv labels>` then a header and one `a,b,height,size` row per merge.
void write_merge_table(std::ostream& out, const Dendrogram& d);
Dendrogram read_merge_table(std::istream& in);

}  // namespace fieldscope
