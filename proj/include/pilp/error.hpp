#pragma once

#include <stdexcept>
#include <string>

namespace pilp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed PILP / certificate input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The real relaxation R(t) is unbounded at some concrete t.
class UnboundedError : public Error {
 public:
  using Error::Error;
};

/// An operation was applied to a program of the wrong form.
class FormError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested outside the certified range of a quasi-polynomial.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// Enumeration exceeded the configured cell budget (PILP_MAX_CELLS).
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace pilp
