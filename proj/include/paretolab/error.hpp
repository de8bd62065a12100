#pragma once

#include <stdexcept>
#include <string>

namespace paretolab {

// Base of every error raised by the library. Each subclass names one
// failure category so callers (and the CLI) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vectors of incompatible length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A numeric parameter outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// An operation that needs at least one element received none.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// Requested data is missing (e.g. empirical values on an EvaluatedHypothesis).
class DataError : public Error {
 public:
  using Error::Error;
};

// Strict positivity required but not met.
class PositivityError : public Error {
 public:
  using Error::Error;
};

// Inputs are individually valid but inconsistent with each other.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// An experiment or problem was configured inconsistently.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration requested on an instance that is too large.
class SizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace paretolab
