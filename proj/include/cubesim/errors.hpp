#pragma once

#include <stdexcept>
#include <string>

namespace cubesim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Input that must satisfy the index-exchange conjugation rule does not.
class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NotPositiveSemidefinite : public Error {
 public:
  using Error::Error;
};

/// Conditioning on an outcome whose probability is (numerically) zero.
class ZeroProbabilityEvent : public Error {
 public:
  using Error::Error;
};

/// Cube is not in the span of the multiport sub-basis.
class OutsideDomain : public Error {
 public:
  using Error::Error;
};

/// A construction produced an object that fails its own consistency checks.
class ConstructionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace cubesim
