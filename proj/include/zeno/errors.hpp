#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

/// Input outside the domain of an operation (bad probability, θ ∉ [0,1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A quantity that is infinite at the requested parameters (γ = 1, γθ = 1).
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature or series evaluation failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zeno
