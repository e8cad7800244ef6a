#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nudge2d {

/// Precondition or shape violation in a call into the library.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or incomplete experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation left the range where its result is meaningful
/// (overflow, non-finite state, saturated series, degenerate norms).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite coefficients detected while time stepping.
class BlowUpError : public NumericalError {
 public:
  BlowUpError(std::uint64_t step, const std::string& what)
      : NumericalError(what), step_(step) {}
  std::uint64_t step() const noexcept { return step_; }

 private:
  std::uint64_t step_;
};

/// A norm that must be positive (mask, reference field) vanished.
class DegenerateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Malformed or mismatched binary file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nudge2d
