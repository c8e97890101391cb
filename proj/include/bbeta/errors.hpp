#pragma once

#include <stdexcept>
#include <string>

namespace bbeta {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Hypergeometric series whose convergence margin is not positive.
class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Sample moments that no beta distribution can reproduce.
class InfeasibleMomentsError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Floating-point overflow or similar failure while evaluating a quantity.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine gave up before reaching its tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bbeta

namespace bbeta {

/// Malformed input document or table. The message names the offending key or line.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bbeta
