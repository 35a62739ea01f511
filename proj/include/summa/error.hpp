#pragma once

#include <stdexcept>
#include <string>

namespace summa {

/// An argument violates an operation's precondition.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure could not reach its target (budget, non-convergence).
class computation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature exhausted its evaluation budget.
class quadrature_error : public computation_error {
 public:
  using computation_error::computation_error;
};

/// An inner series did not converge where it was required to.
class convergence_error : public computation_error {
 public:
  using computation_error::computation_error;
};

}  // namespace summa
