#pragma once

#include <stdexcept>
#include <string>

namespace vbent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Site count odd, too small, or outside the supported range.
class InvalidSize : public Error {
 public:
  using Error::Error;
};

/// Site pair with i == j or a site index out of range.
class InvalidPair : public Error {
 public:
  using Error::Error;
};

/// Amplitude vector that cannot represent a state (all zero, wrong length).
class InvalidState : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// Density matrix with an eigenvalue below the clamping threshold.
class InvalidDensityMatrix : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a closed-form expression.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two-site reduced state that is not of Werner form.
class NotRotationallyInvariant : public Error {
 public:
  using Error::Error;
};

/// Request outside what a solver handles (e.g. exact routes beyond n = 6).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Phasor system without any consistent assignment.
class NoSolution : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON input or a schema violation.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace vbent
