#include <gtest/gtest.h>

#include <sstream>

#include "fieldscope/error.hpp"
#include "fieldscope/oracle.hpp"
#include "fieldscope/taxonomy.hpp"

using namespace fieldscope;

namespace {

TaxonomyTree small_tree() {
  std::istringstream in(
      "# node_id\tname\tlevel\tparent_id\n"
      "1\tNatural\tdomain\t\n"
      "2\tEngineering\tdomain\t\n"
      "1.1\tMath\tdiscipline\t1\n"
      "1.2\tPhysics\tdiscipline\t1\n"
      "2.1\tCivil\tdiscipline\t2\n"
      "1.1.a\tAlgebra\tspecialty\t1.1\n"
      "1.1.b\tTopology\tspecialty\t1.1\n"
      "1.2.a\tOptics\tspecialty\t1.2\n"
      "2.1.a\tBridges\tspecialty\t2.1\n");
  return TaxonomyTree::parse(in);
}

}  // namespace

TEST(Taxonomy, DistanceByDeepestSharedAncestor) {
  const auto t = small_tree();
  EXPECT_EQ(d_exp(t, "1.1.a", "1.1.a"), 0);
  EXPECT_EQ(d_exp(t, "1.1.a", "1.1.b"), 1);
  EXPECT_EQ(d_exp(t, "1.1.a", "1.2.a"), 2);
  EXPECT_EQ(d_exp(t, "1.1.a", "2.1.a"), 3);
  EXPECT_EQ(d_exp(t, "1.1", "2.1"), 2);
}

TEST(Taxonomy, AncestorsAndLevels) {
  const auto t = small_tree();
  EXPECT_EQ(t.ancestor_at("1.2.a", Level::domain), "1");
  EXPECT_EQ(t.ancestor_at("1.2.a", Level::discipline), "1.2");
  EXPECT_EQ(t.nodes_at(Level::specialty).size(), 4u);
  EXPECT_TRUE(t.is_specialty("2.1.a"));
  EXPECT_FALSE(t.is_specialty("2.1"));
}

TEST(Taxonomy, MatrixMatchesOracle) {
  const auto t = TaxonomyTree::load(FIELDSCOPE_DATA_DIR "/oecd_taxonomy.tsv");
  const auto m = d_exp_matrix(t, Level::specialty);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      EXPECT_EQ(m(i, j), oracle::tree_distance(t, m.labels()[i], m.labels()[j]));
    }
  }
}

TEST(Taxonomy, RejectsBrokenStructure) {
  std::istringstream orphan("1\tA\tdomain\t\n1.1\tB\tdiscipline\t9\n");
  EXPECT_THROW(TaxonomyTree::parse(orphan), Error);
  std::istringstream skip("1\tA\tdomain\t\n1.1\tB\tspecialty\t1\n");
  EXPECT_THROW(TaxonomyTree::parse(skip), Error);
  std::istringstream dup("1\tA\tdomain\t\n1\tB\tdomain\t\n");
  EXPECT_THROW(TaxonomyTree::parse(dup), Error);
}

TEST(Taxonomy, UnknownIdIsReported) {
  const auto t = small_tree();
  try {
    d_exp(t, "1.1.a", "nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::unknown_label);
  }
}
