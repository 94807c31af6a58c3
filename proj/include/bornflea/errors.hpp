#pragma once

#include <stdexcept>
#include <string>

namespace bornflea {

// A value or object handed to an operation violates its invariants.
struct InvalidInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to meet its tolerance (quadrature,
// eigensolve, truncation gate, aliasing guard, ...).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An evaluation or support lies outside the available grid/domain.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Configuration rejected during validation; the message lists every
// violation with its field path, not only the first.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bornflea
