#pragma once

#include <stdexcept>
#include <string>

namespace vgic {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative routine failed to converge within its cap.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain (e.g. logdet of a non-PD matrix).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed channel or inconsistent shapes.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// I - A A^T is singular and the genie term is undefined.
class GenieDegenerate : public Error {
 public:
  using Error::Error;
};

/// Input file could not be read or parsed.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace vgic
