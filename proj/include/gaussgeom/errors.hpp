#pragma once

#include <stdexcept>
#include <string>

namespace gaussgeom {

// Matrix order n must be >= 1.
class InvalidOrder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operands of different order, or a component array of the wrong size.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input outside the domain of the operation (non-SPD point, singular group element, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Wrong number of directions handed to a moment estimator.
class ArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A finite-difference stencil left the SPD cone even after the maximal number of step halvings.
class StepTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed serialized input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gaussgeom
