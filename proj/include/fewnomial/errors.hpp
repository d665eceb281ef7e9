#ifndef FEWNOMIAL_ERRORS_HPP
#define FEWNOMIAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fewnomial {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidIndexError : public Error {
 public:
  using Error::Error;
};

/// Operands live in rings with different numbers of variables.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Degree of the zero polynomial was requested.
class UndefinedDegreeError : public Error {
 public:
  using Error::Error;
};

class NotHomogeneousError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. `details` carries a serialized diagnostic
/// (for the derivation-division run, the full trace as JSON).
class InvariantViolation : public Error {
 public:
  InvariantViolation(const std::string& what, std::string details = {})
      : Error(what), details_(std::move(details)) {}
  const std::string& details() const noexcept { return details_; }

 private:
  std::string details_;
};

class OutOfDomainError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace fewnomial

#endif  // FEWNOMIAL_ERRORS_HPP
