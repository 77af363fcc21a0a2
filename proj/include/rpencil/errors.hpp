#pragma once

#include <stdexcept>
#include <string>

namespace rpencil {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedAlgebra : public Error {
 public:
  using Error::Error;
};

class InvalidParabolic : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A point or finite-difference stencil left the chart domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The bivector is not invertible at the queried point.
class DegeneratePoint : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A report or config file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rpencil
