#pragma once

#include <span>
#include <string>
#include <vector>

#include "fieldscope/corpus_model.hpp"
#include "fieldscope/dissimilarity_matrix.hpp"
#include "fieldscope/execution.hpp"

namespace fieldscope {

// Dense routines take p and q indexed over the same symbols. The
// ProbabilityVector overloads align two supports by word, treating absent
// words as zero mass. Sums run in a fixed order (index order for dense input,
// ascending word for vectors) so results are reproducible.

// Generalized entropy of order alpha; alpha == 1 is Shannon entropy (nats).
double h_alpha(std::span<const double> p, double alpha);
double h_alpha(const ProbabilityVector& p, double alpha);

// Generalized Jensen-Shannon divergence H(m) - H(p)/2 - H(q)/2, m = (p+q)/2.
double d_alpha(std::span<const double> p, std::span<const double> q, double alpha);
double d_alpha(const ProbabilityVector& p, const ProbabilityVector& q, double alpha);

// Value of d_alpha when p and q have disjoint supports. Undefined for alpha == 1.
double d_max(std::span<const double> p, std::span<const double> q, double alpha);
double d_max(const ProbabilityVector& p, const ProbabilityVector& q, double alpha);

// Normalized order-2 divergence in [0,1], evaluated as
// 1 - 2 sum(p q) / (sum(p^2) + sum(q^2)), which is exactly 0 for identical and
// exactly 1 for disjoint inputs.
double d_lang(std::span<const double> p, std::span<const double> q);
double d_lang(const ProbabilityVector& p, const ProbabilityVector& q);

// The same quantity written out as [2 H2(m) - H2(p) - H2(q)] / [(2 - H2(p) - H2(q)) / 2].
double d_lang_explicit(std::span<const double> p, std::span<const double> q);

struct LabeledDistribution {
  std::string label;
  ProbabilityVector distribution;
};

// All pairwise d_lang values. Cells are independent; the parallel path splits
// the upper triangle across workers.
DissimilarityMatrix d_lang_matrix(std::span<const LabeledDistribution> fields,
                                  Execution exec = Execution::parallel);

// Unnormalized d_alpha for any order (used when alpha != 2).
DissimilarityMatrix d_alpha_matrix(std::span<const LabeledDistribution> fields, double alpha,
                                   Execution exec = Execution::parallel);

}  // namespace fieldscope
