#pragma once

#include <stdexcept>
#include <string>

namespace nwit {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (bad rectangle, point off the domain, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Index sets are only exact for rational and quadratic rectangles.
class NotExactlyEnumerable : public Error {
 public:
  using Error::Error;
};

/// An index set contains both an x-axis and a y-axis mode on a quadratic
/// rectangle. Cannot happen when the square ratio is irrational.
class InconsistentSpectrum : public Error {
 public:
  using Error::Error;
};

/// Sampling could not locate a strictly negative boundary value.
class NumericalInconclusive : public Error {
 public:
  using Error::Error;
};

/// Constant eigenfunctions have no non-positivity witness.
class ConstantEigenfunction : public Error {
 public:
  using Error::Error;
};

/// Lifting an identically zero function to the square.
class EmptyLift : public Error {
 public:
  using Error::Error;
};

}  // namespace nwit
