#ifndef RCK_ERRORS_HPP
#define RCK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rck {

/// Two events (or an event and a profile) bound to different frames were combined.
class FrameMismatch : public std::invalid_argument {
 public:
  FrameMismatch() : std::invalid_argument("events belong to different frames") {}
};

/// An operation was called outside its domain (unknown player, non-local anchor, bad arity ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The hypothesis of a theorem-checking operation does not hold for the given input.
class HypothesisViolation : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// An enumeration would exceed its configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The finite horizon is too short for the requested analysis.
class HorizonInadequate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Partitions kept refining until the end of the horizon. This is a truncation
/// artifact, not a counterexample.
class StabilizationNotReached : public HorizonInadequate {
 public:
  using HorizonInadequate::HorizonInadequate;
};

/// An internal cross-check failed. Always a bug, never an input problem.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rck

#endif  // RCK_ERRORS_HPP
