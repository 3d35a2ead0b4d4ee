#pragma once

#include <stdexcept>
#include <string>

namespace bfred {

// Base of every error the library reports. Markers for expected negative
// outcomes (not invertible, no solution, ...) use std::optional instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::string position)
      : Error(position.empty() ? message : position + ": " + message),
        position_(std::move(position)) {}

  const std::string& position() const noexcept { return position_; }

 private:
  std::string position_;
};

// A construction-time check failed: not closed, not multiplicative, ...
class VerificationError : public Error {
 public:
  using Error::Error;
};

class ClosureCapExceeded : public Error {
 public:
  using Error::Error;
};

class KernelNotNilpotent : public Error {
 public:
  using Error::Error;
};

// The homomorphism carries no constructive idempotent-lifting oracle.
class NoLiftingOracle : public Error {
 public:
  using Error::Error;
};

// Operation outside the decidable fragment that is implemented.
class Unsupported : public Error {
 public:
  using Error::Error;
};

// An internal certificate failed. Never expected; always a bug.
class DefectError : public Error {
 public:
  using Error::Error;
};

}  // namespace bfred
