#pragma once

#include <stdexcept>
#include <string>

namespace torus {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fields defined on different tori or with different truncations.
class IncompatibleFields : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Grid too coarse to represent the requested bandwidth exactly.
class Undersampled : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Time integration failed (non-finite state, rejected step).
class SolverAbort : public Error {
 public:
  using Error::Error;
};

}  // namespace torus
