#pragma once

#include <stdexcept>
#include <string>

namespace gptdisc {

/// Malformed input: dimension mismatch, non-finite coordinates, bad arguments.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problem size exceeds what a desk-scale routine is built for.
class UnsupportedSize : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The LP engine gave up (iteration guard, singular basis).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Results that contradict each other, e.g. a duality gap after two optimal solves.
class InternalInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gptdisc
