#ifndef CLTL_ERROR_HPP
#define CLTL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cltl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in formula, lasso or model text.  Positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A formula was handed to an operation that does not accept its fragment.
class FragmentError : public Error {
 public:
  using Error::Error;
};

/// An input file could not be opened or read.
class FileError : public Error {
 public:
  using Error::Error;
};

/// Input parsed but is semantically invalid (out-of-range state, undeclared
/// proposition, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace cltl

#endif  // CLTL_ERROR_HPP
