#pragma once

#include <stdexcept>
#include <string>

namespace iongate {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A state or operator has leaked past the retained Fock levels.
class CutoffError : public Error {
 public:
  using Error::Error;
};

// A square root was requested of a matrix with a clearly negative eigenvalue.
class NonPSDError : public Error {
 public:
  using Error::Error;
};

// Step refinement changed the result by more than the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Parameters are inconsistent with the requested gate type.
class ModeError : public Error {
 public:
  using Error::Error;
};

// An iterative solver ran out of iterations.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Pulse schedule geometry is invalid (segment lengths, ramp fits).
class GeometryError : public Error {
 public:
  using Error::Error;
};

}  // namespace iongate
