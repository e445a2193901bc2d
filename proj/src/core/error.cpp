#include "fieldscope/error.hpp"

namespace fieldscope {

std::string_view category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::invalid_argument: return "invalid-argument";
    case ErrorCategory::input_not_found: return "input-not-found";
    case ErrorCategory::io: return "io";
    case ErrorCategory::parse: return "parse";
    case ErrorCategory::duplicate_id: return "duplicate-id";
    case ErrorCategory::unknown_label: return "unknown-label";
    case ErrorCategory::insufficient_vocabulary: return "insufficient-vocabulary";
    case ErrorCategory::degenerate: return "degenerate";
    case ErrorCategory::missing_endpoint: return "missing-endpoint";
    case ErrorCategory::short_history: return "short-history";
  }
  return "unknown";
}

InsufficientVocabulary::InsufficientVocabulary(std::size_t available, std::size_t required)
    : Error(ErrorCategory::insufficient_vocabulary,
            "insufficient vocabulary: " + std::to_string(available) + " word types available, " +
                std::to_string(required) + " required"),
      available_(available),
      required_(required) {}

DegenerateCitationTerm::DegenerateCitationTerm(std::size_t from, std::size_t to)
    : Error(ErrorCategory::degenerate, "citation term " + std::to_string(from) + "->" +
                                           std::to_string(to) + " has a zero denominator"),
      from_(from),
      to_(to) {}

void fail(ErrorCategory category, const std::string& what) { throw Error(category, what); }

}  // namespace fieldscope
