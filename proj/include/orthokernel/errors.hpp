#pragma once

#include <stdexcept>
#include <string>

namespace orthokernel {

/// Malformed arguments: length or ambient mismatches, unparsable input.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of a geometric operation does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Random construction gave up after exhausting its retry budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Something that the mathematics guarantees did not happen. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace orthokernel
