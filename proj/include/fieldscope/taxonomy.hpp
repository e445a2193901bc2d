#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fieldscope/dissimilarity_matrix.hpp"

namespace fieldscope {

enum class Level { domain = 0, discipline = 1, specialty = 2 };

std::string_view level_name(Level level);
Level parse_level(std::string_view name);

struct TaxonomyNode {
  std::string id;
  std::string name;
  Level level;
  std::string parent;  // empty for domains
};

// Strict three-level classification tree (domain -> discipline -> specialty).
// Immutable after construction.
class TaxonomyTree {
 public:
  TaxonomyTree() = default;

  // Nodes may arrive in any order; the tree is validated as a whole.
  static TaxonomyTree from_nodes(std::vector<TaxonomyNode> nodes);

  // Tab-separated rows `node_id, name, level, parent_id`; '#' lines ignored.
  static TaxonomyTree parse(std::istream& in);
  static TaxonomyTree load(const std::filesystem::path& path);

  bool contains(std::string_view id) const;
  const TaxonomyNode& node(std::string_view id) const;
  Level level_of(std::string_view id) const { return node(id).level; }
  bool is_specialty(std::string_view id) const;

  // The ancestor of `id` at `level` (the node itself when levels match).
  const std::string& ancestor_at(std::string_view id, Level level) const;

  // Node ids at a level, in file order.
  std::vector<std::string> nodes_at(Level level) const;
  std::size_t size() const noexcept { return nodes_.size(); }

 private:
  std::vector<TaxonomyNode> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Number of links from i and j up to their closest common ancestor, counting
// an implicit root above the domains. Both nodes must sit at the same level.
int d_exp(const TaxonomyTree& tree, std::string_view i, std::string_view j);

DissimilarityMatrix d_exp_matrix(const TaxonomyTree& tree, Level level);

}  // namespace fieldscope
