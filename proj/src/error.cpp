#include "polfair/error.hpp"

namespace polfair {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::NotAWord: return "NotAWord";
    case ErrorKind::ResourceFormat: return "ResourceFormatError";
    case ErrorKind::ResourceMissing: return "ResourceMissing";
    case ErrorKind::EmptyDocument: return "EmptyDocument";
    case ErrorKind::InvalidRate: return "InvalidRate";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NoHeadings: return "NoHeadings";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::InsufficientVocabulary: return "InsufficientVocabulary";
    case ErrorKind::EmptyPolicy: return "EmptyPolicy";
    case ErrorKind::Backend: return "BackendError";
    case ErrorKind::ParseFailure: return "ParseFailure";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::Config: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

Error::Error(ErrorKind kind, const std::string& message, std::size_t line)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      kind_(kind),
      line_(line) {}

}  // namespace polfair
