#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gsd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Raised when a model violates a structural invariant (overlapping add/del,
/// undeclared fluent, mismatched fluent sets between two models, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

class InvalidPlanError : public Error {
 public:
  InvalidPlanError(const std::string& message, std::size_t step)
      : Error(message), step_(step) {}
  /// Index of the first plan step that could not be applied.
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace gsd
