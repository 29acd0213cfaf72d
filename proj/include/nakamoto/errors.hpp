#pragma once

#include <stdexcept>
#include <string>

namespace nakamoto {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// An optimisation scan could not bracket its optimum inside the search cap.
class SearchBoundError : public std::runtime_error {
 public:
  explicit SearchBoundError(const std::string& what) : std::runtime_error(what) {}
};

// Two independent evaluation routes of the same quantity disagreed, or a
// numerical routine failed to converge.
class IntegrityError : public std::runtime_error {
 public:
  explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

// A request that cannot be satisfied, e.g. inverting a zero slope.
class UnsatisfiableError : public std::runtime_error {
 public:
  explicit UnsatisfiableError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nakamoto
