#ifndef ROBUSTMATCH_ERROR_HPP_
#define ROBUSTMATCH_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace robustmatch {

// Bad user input: malformed documents, invalid instances, unknown agents.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A precondition on an operation's arguments was violated by the caller
// (e.g. eliminating a rotation that is not exposed).
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

// An internal consistency check failed. Indicates a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace robustmatch

#endif  // ROBUSTMATCH_ERROR_HPP_
