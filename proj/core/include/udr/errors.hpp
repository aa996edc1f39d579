#pragma once

#include <stdexcept>
#include <string>

namespace udr {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A caller-supplied argument violates a documented precondition.
class InvalidParameterError : public Error {
 public:
  explicit InvalidParameterError(const std::string& what) : Error(what) {}
};

/// A bounded search exceeded its configured budget before finishing.
class BudgetExceededError : public Error {
 public:
  explicit BudgetExceededError(const std::string& what) : Error(what) {}
};

/// No solution exists within the given candidate set or cap.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what) : Error(what) {}
};

/// The reduction loop passed its covering-bound iteration cap.
class IterationCapError : public Error {
 public:
  explicit IterationCapError(const std::string& what) : Error(what) {}
};

/// Malformed instance/solution document. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace udr
