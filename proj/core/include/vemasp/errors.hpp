#pragma once

#include <stdexcept>
#include <string>

namespace vemasp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// mesh
class DegenerateCut : public Error {
 public:
  using Error::Error;
};
class NonPositiveArea : public Error {
 public:
  using Error::Error;
};
class ParseError : public Error {
 public:
  using Error::Error;
};
class TopologyError : public Error {
 public:
  using Error::Error;
};

// local VEM matrices
class SingularGram : public Error {
 public:
  using Error::Error;
};

// problems / preconditioners
class UnknownField : public Error {
 public:
  using Error::Error;
};
class NonPositiveDiagonal : public Error {
 public:
  using Error::Error;
};
class FactorizationFailure : public Error {
 public:
  using Error::Error;
};

// krylov
class DimensionExceedsCap : public Error {
 public:
  using Error::Error;
};

}  // namespace vemasp
