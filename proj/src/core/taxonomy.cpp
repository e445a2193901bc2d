#include "fieldscope/taxonomy.hpp"

#include <istream>

#include "fieldscope/delimited.hpp"
#include "fieldscope/error.hpp"
#include "fieldscope/io.hpp"

namespace fieldscope {

std::string_view level_name(Level level) {
  switch (level) {
    case Level::domain: return "domain";
    case Level::discipline: return "discipline";
    case Level::specialty: return "specialty";
  }
  return "?";
}

Level parse_level(std::string_view name) {
  name = delimited::trim(name);
  if (name == "domain") return Level::domain;
  if (name == "discipline") return Level::discipline;
  if (name == "specialty") return Level::specialty;
  fail(ErrorCategory::invalid_argument, "unknown taxonomy level '" + std::string(name) + "'");
}

TaxonomyTree TaxonomyTree::from_nodes(std::vector<TaxonomyNode> nodes) {
  TaxonomyTree t;
  t.nodes_ = std::move(nodes);
  for (std::size_t k = 0; k < t.nodes_.size(); ++k) {
    const auto& n = t.nodes_[k];
    if (n.id.empty()) fail(ErrorCategory::parse, "taxonomy node with empty id");
    if (!t.index_.emplace(n.id, k).second) {
      fail(ErrorCategory::duplicate_id, "duplicate taxonomy id '" + n.id + "'");
    }
  }
  // A parent is always exactly one level up, which also rules out cycles.
  for (const auto& n : t.nodes_) {
    if (n.level == Level::domain) {
      if (!n.parent.empty()) fail(ErrorCategory::parse, "domain '" + n.id + "' has a parent");
      continue;
    }
    auto it = t.index_.find(n.parent);
    if (it == t.index_.end()) {
      fail(ErrorCategory::unknown_label, "node '" + n.id + "' has unknown parent '" + n.parent + "'");
    }
    auto expected = static_cast<Level>(static_cast<int>(n.level) - 1);
    if (t.nodes_[it->second].level != expected) {
      fail(ErrorCategory::parse, "node '" + n.id + "' (" + std::string(level_name(n.level)) +
                                     ") must have a " + std::string(level_name(expected)) +
                                     " parent");
    }
  }
  return t;
}

TaxonomyTree TaxonomyTree::parse(std::istream& in) {
  std::vector<TaxonomyNode> nodes;
  std::string line;
  std::size_t lineno = 0;
  while (delimited::read_line(in, line)) {
    ++lineno;
    if (delimited::is_comment_or_blank(line)) continue;
    auto cells = delimited::split_csv(line, '\t');
    if (cells.size() < 3 || cells.size() > 4) {
      fail(ErrorCategory::parse, "taxonomy line " + std::to_string(lineno) +
                                     ": expected node_id, name, level, parent_id");
    }
    TaxonomyNode n;
    n.id = std::string(delimited::trim(cells[0]));
    n.name = std::string(delimited::trim(cells[1]));
    n.level = parse_level(cells[2]);
    if (cells.size() == 4) n.parent = std::string(delimited::trim(cells[3]));
    nodes.push_back(std::move(n));
  }
  return from_nodes(std::move(nodes));
}

TaxonomyTree TaxonomyTree::load(const std::filesystem::path& path) {
  auto in = io::open_input(path);
  return parse(in);
}

bool TaxonomyTree::contains(std::string_view id) const {
  return index_.find(std::string(id)) != index_.end();
}

const TaxonomyNode& TaxonomyTree::node(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) fail(ErrorCategory::unknown_label, "unknown taxonomy id '" + std::string(id) + "'");
  return nodes_[it->second];
}

bool TaxonomyTree::is_specialty(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it != index_.end() && nodes_[it->second].level == Level::specialty;
}

const std::string& TaxonomyTree::ancestor_at(std::string_view id, Level level) const {
  const TaxonomyNode* n = &node(id);
  if (static_cast<int>(n->level) < static_cast<int>(level)) {
    fail(ErrorCategory::invalid_argument, "'" + n->id + "' is above level " + std::string(level_name(level)));
  }
  while (n->level != level) n = &node(n->parent);
  return n->id;
}

std::vector<std::string> TaxonomyTree::nodes_at(Level level) const {
  std::vector<std::string> out;
  for (const auto& n : nodes_) {
    if (n.level == level) out.push_back(n.id);
  }
  return out;
}

int d_exp(const TaxonomyTree& tree, std::string_view i, std::string_view j) {
  const TaxonomyNode* a = &tree.node(i);
  const TaxonomyNode* b = &tree.node(j);
  if (a->level != b->level) {
    fail(ErrorCategory::invalid_argument, "d_exp needs nodes at one level: '" + a->id + "' is a " +
                                              std::string(level_name(a->level)) + ", '" + b->id +
                                              "' a " + std::string(level_name(b->level)));
  }
  int links = 0;
  while (a != b) {
    ++links;
    if (a->parent.empty()) break;  // distinct domains meet at the implicit root
    a = &tree.node(a->parent);
    b = &tree.node(b->parent);
  }
  return links;
}

DissimilarityMatrix d_exp_matrix(const TaxonomyTree& tree, Level level) {
  DissimilarityMatrix m(tree.nodes_at(level));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      m.set(i, j, d_exp(tree, m.labels()[i], m.labels()[j]));
    }
  }
  m.metadata()["measure"] = "d_exp";
  m.metadata()["level"] = std::string(level_name(level));
  return m;
}

}  // namespace fieldscope
