#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ramanujan {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Broken edge involution or dangling vertex reference in a Serre graph.
class StructuralError : public Error {
 public:
  StructuralError(const std::string& what, std::size_t edge_id)
      : Error(what), edge_id_(edge_id) {}
  std::size_t edge_id() const noexcept { return edge_id_; }

 private:
  std::size_t edge_id_;
};

/// A precondition on the arguments does not hold (parity, degree, range).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or state-space budget was exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical method failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ramanujan
