#ifndef TREID_ERRORS_HPP
#define TREID_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treid {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A vertex outside the tree (bad symbol, or a level the tree does not have).
class InvalidVertexError : public Error {
 public:
  using Error::Error;
};

// An operation asked for a level deeper than the portrait (or report) covers.
class DepthExceededError : public Error {
 public:
  using Error::Error;
};

// Enumeration hit the element cap; carries how many elements were found.
class CapExceededError : public Error {
 public:
  CapExceededError(const std::string& msg, std::size_t partial_count)
      : Error(msg + " (partial count: " + std::to_string(partial_count) + ")"),
        partial_count_(partial_count) {}

  std::size_t partial_count() const noexcept { return partial_count_; }

 private:
  std::size_t partial_count_;
};

// A query that needs a full element list was asked of a non-enumerated group.
class RequiresEnumerationError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The candidate isometry does not normalize the level quotient.
class InvalidNormalizerError : public Error {
 public:
  using Error::Error;
};

// Subgroup factors expected to commute pairwise do not.
class CommutationViolationError : public Error {
 public:
  using Error::Error;
};

class UnknownGroupError : public Error {
 public:
  using Error::Error;
};

class WordError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace treid

#endif  // TREID_ERRORS_HPP
