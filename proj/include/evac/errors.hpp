#pragma once

#include <stdexcept>
#include <string>

namespace evac {

class EvacError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or model-violating input (bad ids, failed validation, bad file).
class InvalidInstance : public EvacError {
 public:
  using EvacError::EvacError;
};

/// A residual network contains a negative-cost cycle; the flow state is corrupt.
class NegativeCycleError : public EvacError {
 public:
  using EvacError::EvacError;
};

/// Augmentation would exceed an edge capacity or drive a flow negative.
class CapacityViolation : public EvacError {
 public:
  using EvacError::EvacError;
};

/// Some positive supply can never reach the sink.
class UnreachableSupply : public EvacError {
 public:
  using EvacError::EvacError;
};

/// Time grid step does not divide the horizon or a transit time.
class GridError : public EvacError {
 public:
  using EvacError::EvacError;
};

class DecompositionError : public EvacError {
 public:
  using EvacError::EvacError;
};

/// Two independent computations of the same quantity disagree.
class OracleDisagreement : public EvacError {
 public:
  using EvacError::EvacError;
};

}  // namespace evac
