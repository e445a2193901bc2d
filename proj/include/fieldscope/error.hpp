#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fieldscope {

// Machine-readable category carried by every library error; the CLI maps it
// to an exit code and prints its name.
enum class ErrorCategory {
  invalid_argument,
  input_not_found,
  io,
  parse,
  duplicate_id,
  unknown_label,
  insufficient_vocabulary,
  degenerate,
  missing_endpoint,
  short_history,
};

std::string_view category_name(ErrorCategory c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

// A field's corpus has fewer distinct word types than the cutoff requires.
class InsufficientVocabulary : public Error {
 public:
  InsufficientVocabulary(std::size_t available, std::size_t required);

  std::size_t available() const noexcept { return available_; }
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t available_;
  std::size_t required_;
};

// One directed term of the citation dissimilarity has a zero denominator:
// neither field has any citation that could enter the ratio.
class DegenerateCitationTerm : public Error {
 public:
  DegenerateCitationTerm(std::size_t from, std::size_t to);

  std::size_t from() const noexcept { return from_; }
  std::size_t to() const noexcept { return to_; }

 private:
  std::size_t from_;
  std::size_t to_;
};

[[noreturn]] void fail(ErrorCategory category, const std::string& what);

}  // namespace fieldscope
