#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cartansym {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset()` is the byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }
  /// The same error with a location (file, line, key) in front.
  ParseError located(const std::string& prefix) const { return ParseError(prefix + what(), offset_, nullptr); }

 private:
  ParseError(const std::string& full, std::size_t offset, std::nullptr_t) : Error(full), offset_(offset) {}
  std::size_t offset_;
};

/// Structurally invalid input: schema violations, chart mismatch, failed load checks.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Evaluation left the domain of an expression (log of a nonpositive value, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Matrix value part is singular or too badly conditioned to invert.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cartansym
