#pragma once

#include <stdexcept>
#include <string>

namespace reflen {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed group strings, cyclotomic text, or configuration.
class ParseError : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A computation would exceed the configured element budget.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

/// An internal consistency check failed. Always a bug or corrupt input data.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

/// A class-level relation failed reflexivity, antisymmetry or transitivity.
class PosetViolation : public InvariantViolation {
public:
  using InvariantViolation::InvariantViolation;
};

}  // namespace reflen
