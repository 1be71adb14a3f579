#pragma once

#include <stdexcept>
#include <string>

namespace hamcert {

// Malformed input: bad edge lists, out-of-range vertices, unsupported sizes.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured work bound (subset enumeration, component size, exact-solver
// vertex count) was hit. Solvers escalate; the CLI maps it to exit code 3.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal contract failed. Never expected on valid inputs.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hamcert
