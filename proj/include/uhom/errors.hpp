#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace uhom {

/// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (session files, polynomial syntax).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
      : Error(msg), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Input outside the supported scope or a violated precondition
/// (non-prime field, context mismatch, non-reduced ring, ...).
class ScopeError : public Error {
 public:
  using Error::Error;
};

/// An ill-defined algebra map: some source relation does not vanish in the target.
class IllDefinedMap : public ScopeError {
 public:
  IllDefinedMap(const std::string& msg, std::string relation)
      : ScopeError(msg), relation_(std::move(relation)) {}
  const std::string& relation() const noexcept { return relation_; }

 private:
  std::string relation_;
};

/// A configured resource cap (S-pairs, degree, enumeration size, deadline) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Radical computation could not certify completeness.
class NotCertified : public Error {
 public:
  using Error::Error;
};

}  // namespace uhom
