#pragma once

#include <stdexcept>
#include <string>

namespace skewjensen {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown generator/family/measure names, invalid options, degenerate splits.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of a generator or family.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; the message carries the row/column location.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A numerical invariant broke (e.g. CCCP energy increased beyond slack).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace skewjensen
