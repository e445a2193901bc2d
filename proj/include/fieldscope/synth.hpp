#pragma once

// Synthetic data generators for tests, benchmarks and the shipped fixture.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fieldscope/corpus_model.hpp"
#include "fieldscope/ingest.hpp"
#include "fieldscope/taxonomy.hpp"

namespace fieldscope::synth {

// Pronounceable pseudo-words: deterministic, lowercase, at least 4 letters,
// never a stop word or an inflected form the lemmatizer would touch.
std::string pseudo_word(std::size_t index);

std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t v, double sparsity = 0.0);

// Zipf weights 1/r^s for r = 1..n, normalized.
std::vector<double> zipf_weights(std::size_t n, double exponent = 1.0);

// Draws `length` words from `weights` over `vocabulary` and joins them with spaces.
std::string sample_text(std::mt19937_64& rng, const std::vector<std::string>& vocabulary,
                        const std::discrete_distribution<std::size_t>& dist, std::size_t length);

struct HierarchyOptions {
  std::size_t domains = 3;
  std::size_t disciplines_per_domain = 2;
  std::size_t specialties_per_discipline = 2;
  std::size_t docs_per_field = 30;
  std::size_t words_per_doc = 120;
  std::size_t shared_words = 400;
  std::size_t domain_words = 300;
  std::size_t discipline_words = 200;
  std::size_t specialty_words = 150;
  // Mixture weights of the four vocabulary layers for every field.
  double w_shared = 0.25;
  double w_domain = 0.30;
  double w_discipline = 0.25;
  double w_specialty = 0.20;
  int first_year = 1991;
  int last_year = 2014;
};

struct PlantedCorpus {
  TaxonomyTree taxonomy;
  std::vector<ArticleRecord> articles;
  std::vector<CitationEdge> citations;
  // Specialty id -> domain id.
  std::vector<std::string> specialties;
  std::vector<std::string> specialty_domain;
};

// Fields generated from a topic model whose vocabulary overlap shrinks down
// the taxonomy: fields share the common layer, fields of one domain share the
// domain layer, and so on. Citations favour close fields the same way.
PlantedCorpus planted_hierarchy(const HierarchyOptions& options, std::uint64_t seed);

// Abstract-like texts for throughput runs (title ~10 words, abstract ~
// `words_per_abstract` words with punctuation, digits and hyphenation).
std::vector<Document> abstracts(std::size_t n, std::size_t words_per_abstract, std::uint64_t seed);

}  // namespace fieldscope::synth
