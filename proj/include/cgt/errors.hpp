#pragma once

#include <stdexcept>
#include <string>

namespace cgt {

// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text: cycle notation, group files, cache documents.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Arguments outside an operation's domain: out-of-range points, degree
// mismatches, non-subgroup arguments, invalid node ids.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// A configured cap (group order, orbit count, degree, wall clock) was hit
// where the operation cannot return a partial result.
class BudgetError : public Error {
public:
  explicit BudgetError(const std::string& what) : Error(what) {}
};

// Filesystem-level failure.
class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(what) {}
};

// Broken internal invariant. Maps to exit code 70 in the CLI.
class InternalError : public Error {
public:
  explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace cgt
