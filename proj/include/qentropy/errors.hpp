#pragma once

#include <stdexcept>
#include <string>

namespace qentropy {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (e.g. ln_q of x <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// exp_q evaluated where 1 + (1-q)x <= 0; the function has no value there.
class UndefinedValueError : public Error {
 public:
  using Error::Error;
};

class PositivityError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

class PartitionError : public Error {
 public:
  using Error::Error;
};

class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

/// A theorem was invoked outside the parameter range where it is claimed.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class AxisError : public Error {
 public:
  using Error::Error;
};

/// f'' vanishes identically, so no positive curvature constants exist.
class DegenerateRangeError : public Error {
 public:
  using Error::Error;
};

class UnknownCaseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qentropy
