#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace fieldscope {

enum class CoarsePos { noun, verb, other };

// Maps a lowercase token and its coarse part of speech to a lemma.
class Lemmatizer {
 public:
  virtual ~Lemmatizer() = default;
  virtual std::string lemmatize(std::string_view token, CoarsePos pos) const = 0;
};

// Dictionary lookup first, then suffix heuristics: hyphenated or non-alphabetic
// tokens are `other`; known irregular forms take their dictionary class;
// "-ing"/"-ed" forms are verbs and "-s" plurals nouns.
CoarsePos guess_pos(std::string_view token);

// Registered names: "suffix" (default English rules) and "identity".
std::unique_ptr<Lemmatizer> make_lemmatizer(std::string_view name);
std::vector<std::string> lemmatizer_names();

}  // namespace fieldscope
