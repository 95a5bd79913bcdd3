#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polfair {

enum class ErrorKind {
  MalformedInput,
  NotAWord,
  ResourceFormat,
  ResourceMissing,
  EmptyDocument,
  InvalidRate,
  InvalidArgument,
  NoHeadings,
  DimensionMismatch,
  ZeroVector,
  InsufficientVocabulary,
  EmptyPolicy,
  Backend,
  ParseFailure,
  EmptyCorpus,
  Config,
};

// Stable names, used verbatim in report error records.
std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  // Resource errors carry the 1-based line of the offending row.
  Error(ErrorKind kind, const std::string& message, std::size_t line);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> line_;
};

}  // namespace polfair
