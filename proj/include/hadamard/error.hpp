#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hadamard {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Points tagged with different space ids were combined in one operation.
class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

/// A point or parameter left the admissible region (disk margin, t outside [0,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested operation has no implementation for this space or set kind.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// An iterative solver did not reach its tolerance, or its certificate failed.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

/// A sampled invariant (nonexpansiveness, monotone trace, ...) was violated.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. `line`/`column` are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::string key = {}, std::size_t line = 0,
             std::size_t column = 0)
      : Error(format(message, key, line, column)),
        message_(std::move(message)),
        key_(std::move(key)),
        line_(line),
        column_(column) {}

  /// The message without the location prefix.
  const std::string& message() const noexcept { return message_; }
  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, const std::string& key,
                            std::size_t line, std::size_t column) {
    std::string out;
    if (line > 0) {
      out += "line " + std::to_string(line);
      if (column > 0) out += ", column " + std::to_string(column);
      out += ": ";
    }
    if (!key.empty()) out += "key '" + key + "': ";
    return out + message;
  }

  std::string message_;
  std::string key_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace hadamard
