#pragma once

#include <stdexcept>
#include <string>

namespace mixnorm {

/// Argument outside the set where an operation is defined (|z| > 1, r = 1
/// on a truncated series, invalid space parameters, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An iterative numerical procedure failed to stabilize within its cap.
class NonConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Coefficient recovery would amplify round-off beyond the requested tolerance.
class ConditioningError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Series inversion impossible (vanishing constant term).
class ExpansionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A principal-branch power left its admissible sector.
class BranchError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A construction parameter set violates one of its structural invariants.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Composition norm bound requested for a constant self-map.
class DegenerateError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Search over a grid found nothing (e.g. no Bloch witnesses).
class NotFoundError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed experiment id, config key, or value.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace mixnorm
