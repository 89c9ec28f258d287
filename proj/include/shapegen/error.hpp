#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shapegen {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lexical, syntactic or semantic error in a spec. Position is 1-based; 0 when
/// the error is not tied to a location (e.g. an undeclared atom found during
/// validation).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

/// Argument outside the domain of a numeric routine (unreachable mean length,
/// z beyond the convergence radius, dimension mismatch, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace shapegen
