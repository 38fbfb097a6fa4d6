#pragma once

#include <stdexcept>
#include <string>

namespace hessianls {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or input violates a documented invariant. `field()` names the
/// offending field (e.g. "gamma") so front ends can report a path.
class InvalidArgument : public Error {
 public:
  InvalidArgument(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Tabulated data queried outside its range with no tail to extrapolate.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// A coefficient evaluated to a non-positive or non-finite value.
class InvalidCoefficient : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition does not hold (e.g. divergent oscillation
/// integral handed to the sandwich builder).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace hessianls
