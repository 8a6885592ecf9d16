#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hecke {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Elements of different kinds were combined, or an element was handed to a
/// group of another kind.
class KindMismatch : public Error {
 public:
  using Error::Error;
};

/// A budgeted enumeration stopped before closing. Either the enumerated set
/// is infinite or the budget was too small; the two cannot be told apart.
class Diverged : public Error {
 public:
  Diverged(const std::string& what, std::size_t frontier)
      : Error(what), frontier_(frontier) {}
  std::size_t frontier() const { return frontier_; }

 private:
  std::size_t frontier_;
};

class NoCanonicalizer : public Error {
 public:
  using Error::Error;
};

class NotFinite : public Error {
 public:
  using Error::Error;
};

class BallTooSmall : public Error {
 public:
  using Error::Error;
};

class UnknownName : public Error {
 public:
  using Error::Error;
};

class BadParameter : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace hecke
