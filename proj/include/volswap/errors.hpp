#pragma once

#include <stdexcept>
#include <string>

namespace volswap {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The series representation is undefined at this state (nu = 0 gives an
/// infinite zeta); use one of the oracles instead.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Finite-difference solution left its probabilistic bounds.
class InstabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure could not reach its requested accuracy.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A check was evaluated outside the range where its verdict means anything.
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace volswap
