#pragma once

#include <stdexcept>
#include <string>

namespace cubecalc {

// Malformed or out-of-contract input. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structural invariant (d^2 = 0, functoriality, partial order axioms, ...)
// does not hold for the data handed to a constructor.
class InvariantError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace cubecalc
