#pragma once

#include <stdexcept>
#include <string>

namespace ktf {

// Bad arguments: out-of-range indices, width mismatches, malformed input.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal invariant did not hold. Always a bug, never bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The rewrite fixpoint of a word is not a KGE-word.
class NormalFormOutsideGrammar : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class SizeGuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFoundWithinLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ktf
