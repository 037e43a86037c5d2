#pragma once

#include <stdexcept>
#include <string>

namespace xduce {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed machine, document or argument.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A word or machine does not live over the expected alphabet.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// An exhaustive procedure was asked to go beyond its configured bound.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A pebble transducer did not halt within its step budget.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace xduce
