#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace zetapprox {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Gamma-function argument landed on a pole (non-positive integer).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the principal domain (negative real axis for log-gamma).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// |f| fell below the near-zero tolerance on a path; a root sits on or next
/// to the contour and the caller has to move it.
class NearZeroError : public Error {
 public:
  NearZeroError(const std::string& what, std::complex<double> where)
      : Error(what), where_(where) {}
  std::complex<double> where() const { return where_; }

 private:
  std::complex<double> where_;
};

/// Adaptive refinement exceeded its depth budget.
class DepthExceededError : public Error {
 public:
  using Error::Error;
};

/// Continuity of a phase could not be certified between two samples.
class BranchError : public Error {
 public:
  using Error::Error;
};

/// Root-on-boundary persisted through the whole jitter schedule.
class BoundaryRootError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs real coefficients got complex ones.
class NonRealCoefficientsError : public Error {
 public:
  using Error::Error;
};

/// A line scan could not resolve a bracket above the step floor.
class StepFloorError : public Error {
 public:
  using Error::Error;
};

/// Caller passed arguments violating an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace zetapprox
