#pragma once

#include <stdexcept>
#include <string>

namespace reldim {

// Base of every error raised by the toolkit. Subclasses map onto CLI exit
// codes: ValidationError -> 2, everything else -> 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Caller-supplied arguments or configuration violate a precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Pair sampling could not reach the requested counts.
class ShortfallError : public Error {
 public:
  ShortfallError(const std::string& what, std::size_t positives, std::size_t negatives)
      : Error(what), positives_(positives), negatives_(negatives) {}
  std::size_t achieved_positives() const noexcept { return positives_; }
  std::size_t achieved_negatives() const noexcept { return negatives_; }

 private:
  std::size_t positives_;
  std::size_t negatives_;
};

// Internal invariant broken (e.g. an edge without a label).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ConflictError : public Error {
 public:
  using Error::Error;
};

}  // namespace reldim
