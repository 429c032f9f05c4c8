#pragma once

#include <stdexcept>
#include <string>

namespace rsc {

// Malformed input: bad ring spec, bad flag, mismatched shapes.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A configured size cap would be exceeded.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical precondition failed (ill-defined morphism, non-unit, ...).
struct MathError : std::logic_error {
  using std::logic_error::logic_error;
};

// Fixed-width arithmetic overflowed; callers retry with arbitrary precision.
struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

}  // namespace rsc
