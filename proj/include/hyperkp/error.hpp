#pragma once

#include <stdexcept>
#include <string>

namespace hyperkp {

// Base of every library error. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands built over different ring parameters (étale relations, jet order).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A required inverse does not exist (zero divisor, coincident points, pole).
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Caller violated a documented precondition (genus range, missing branch point).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Exact mode cannot represent a required constant; numeric mode is needed.
class ModeError : public Error {
 public:
  using Error::Error;
};

// A curve or divisor failed validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed input file or command line.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Fixture constraints could not be met within the retry budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Something that holds by construction did not hold. Signals an arithmetic bug.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperkp
