#pragma once

#include <stdexcept>
#include <string>

namespace bigbracket {

/// Raised when a mathematical precondition fails (inhomogeneous input, d^2 != 0, ...).
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when user-supplied data is malformed or violates a structural axiom.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bigbracket
