#pragma once

#include <stdexcept>
#include <string>

namespace eisenprod {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

class RegistryMismatch : public Error {
 public:
  RegistryMismatch() : Error("polynomials belong to different variable registries") {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// The errors below are internal tripwires: they indicate that a
// mathematical fact the pipeline relies on did not hold.

class DivisionNotExact : public Error {
 public:
  using Error::Error;
};

class PivotVanishes : public Error {
 public:
  using Error::Error;
};

class VanishingTower : public Error {
 public:
  using Error::Error;
};

class SingularExtension : public Error {
 public:
  using Error::Error;
};

class AmbiguousBranch : public Error {
 public:
  using Error::Error;
};

class DegreeDrop : public Error {
 public:
  using Error::Error;
};

}  // namespace eisenprod
