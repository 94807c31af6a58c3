#pragma once

#include "bornflea/errors.hpp"

namespace bornflea {

// Dimensionless double-well parameters: V0(x) = lambda/4 (x^2 - a^2)^2 with
// kinetic term -hbar^2/(2 m) d^2/dx^2.
struct ModelParams {
  double hbar;
  double a;
  double lambda;
  double mass = 1.0;

  void validate() const {
    if (!(hbar > 0.0) || !(a > 0.0) || !(lambda > 0.0) || !(mass > 0.0))
      throw InvalidInputError("ModelParams: all fields must be positive");
  }
};

}  // namespace bornflea
