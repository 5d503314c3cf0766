#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sprank {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coordinate or node index outside the declared grid.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// Mismatched or unsupported dimensions (m < n, n = 0, differing shapes).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A resilience target or matching count outside its admissible range.
class InvalidK : public Error {
 public:
  using Error::Error;
};

class NotDisjoint : public Error {
 public:
  using Error::Error;
};

/// Raised by min_cut when the supplied flow still admits an augmenting path.
class NotMaximal : public Error {
 public:
  using Error::Error;
};

class TagMismatch : public Error {
 public:
  using Error::Error;
};

class NotDecomposable : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class NotSubset : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search ran out of its work budget. `lower_bound()` is the
/// best value certified before the budget ran out (-1 when nothing is known).
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, int lower_bound)
      : Error(what), lower_bound_(lower_bound) {}

  int lower_bound() const noexcept { return lower_bound_; }

 private:
  int lower_bound_;
};

/// Malformed input text. Line and column are 1-based; column 0 means the
/// whole line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& reason)
      : Error("line " + std::to_string(line) +
              (column ? ", column " + std::to_string(column) : std::string{}) +
              ": " + reason),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace sprank
