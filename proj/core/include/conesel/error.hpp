#pragma once

#include <stdexcept>
#include <string>

namespace conesel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix/vector shapes of an input do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input contains NaN or infinity where finite values are required.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// A polyhedron that was required to be nonempty is empty.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// The hard constraints alone admit no input. The controller model is broken
/// upstream of any selection algorithm.
class HardInfeasibleError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs a feasible constraint set received an infeasible one.
class InfeasibleInputError : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling hit its attempt cap.
class SamplingExhaustedError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (constraint files, scenario records).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace conesel
