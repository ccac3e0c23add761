#pragma once

#include <stdexcept>
#include <string>

namespace wlr {

/// Malformed input: bad text formats, out-of-range indices, violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive computation would exceed its configured enumeration budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proven bound was violated at runtime. Always a bug in the engine.
class BoundViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace wlr
