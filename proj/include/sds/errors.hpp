#pragma once

#include <stdexcept>
#include <string>

namespace sds {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed profile or lottery text; line/column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

// A lottery, order or alternative set does not live on the expected alternatives.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Construction-time invariant violated (bad order, bad lottery, unknown agent, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An enumeration (RSD permutations, weak orders) would exceed the configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace sds
