#pragma once

// Brute-force reference implementations. Each one follows the textbook
// definition directly and shares no code with the production routines it is
// used to check.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fieldscope/clustering.hpp"
#include "fieldscope/taxonomy.hpp"

namespace fieldscope::oracle {

// Term-by-term generalized entropy, divergence and its disjoint-support bound.
double entropy(std::span<const double> p, double alpha);
double divergence(std::span<const double> p, std::span<const double> q, double alpha);
double divergence_bound(std::span<const double> p, std::span<const double> q, double alpha);
double normalized_divergence(std::span<const double> p, std::span<const double> q, double alpha);

// Citation dissimilarity summing every C term over t explicitly.
// counts is row-major n x n. Returns NaN for a zero denominator.
double citation_dissimilarity(std::span<const std::uint64_t> counts, std::size_t n,
                              std::size_t i, std::size_t j);

// Links to the closest common ancestor via explicit root paths.
int tree_distance(const TaxonomyTree& tree, const std::string& i, const std::string& j);

// O(n^2) concordant/discordant pair counting.
double kendall_tau_b(std::span<const double> x, std::span<const double> y);
// Ranks by counting smaller and equal elements, then Pearson.
double spearman_rho(std::span<const double> x, std::span<const double> y);

// Average linkage recomputed from member lists at every step (O(N^3) per
// step), same tie rule as the production code.
Dendrogram group_average(const std::vector<std::vector<double>>& d,
                         const std::vector<std::string>& labels);

}  // namespace fieldscope::oracle
