#pragma once

#include <stdexcept>
#include <string>

namespace nmetric {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a precondition (shape, arity, parameter range).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Exact search refused because the instance exceeds the configured size.
class CapacityError : public UsageError {
 public:
  using UsageError::UsageError;
};

/// Iterative kernel failed to converge or produced out-of-range values.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Matrix handed to gram_det_sqrt has a clearly negative pivot.
class InvalidGram : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// Input is valid in shape but degenerate for the requested quantity.
class DegenerateInput : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class DisconnectedHypergraph : public UsageError {
 public:
  using UsageError::UsageError;
};

/// A built-in construction failed its own exhaustive verification.
class ConstructionBug : public Error {
 public:
  using Error::Error;
};

}  // namespace nmetric
