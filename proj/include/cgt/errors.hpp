#pragma once

#include <stdexcept>
#include <string>

namespace cgt {

/// Bad caller input: out-of-range indices, mismatched lengths, invalid
/// parameter combinations, malformed files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The exponent search found no feasible prime-power assignment.
class NoSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Outcomes that no honest test executor could have produced.
class ProtocolViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A brute-force verifier was asked to enumerate more than its guard allows.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cgt
