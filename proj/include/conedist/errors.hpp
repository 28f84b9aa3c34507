#pragma once

#include <stdexcept>

namespace conedist {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent caller input (dimensions, signs, missing fields).
struct InputError : Error {
  using Error::Error;
};

// A documented precondition of an operation was violated.
struct PreconditionError : Error {
  using Error::Error;
};

// A hard size cap was exceeded (enumeration and oracle limits).
struct CapacityError : Error {
  using Error::Error;
};

// Floating-point breakdown detected by an internal consistency check.
struct NumericalError : Error {
  using Error::Error;
};

}  // namespace conedist
