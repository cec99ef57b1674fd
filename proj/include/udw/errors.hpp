//! Exception taxonomy shared by the whole library.
//!
//! DomainError   - mathematically invalid input (e.g. a non-positive energy
//!                 where a strictly positive one is required).
//! RegimeError   - input is mathematically fine but outside the validity
//!                 regime of the requested closed form or approximation.
//! ConvergenceError - adaptive quadrature exhausted its doubling budget
//!                 without meeting the tolerance; carries the last two
//!                 panel-doubling estimates for diagnosis.
//! ConfigError   - malformed run configuration (CLI exit code 2).

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace udw {

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RegimeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what,
                   std::complex<double> last,
                   std::complex<double> previous)
      : std::runtime_error(what), lastEstimate(last), previousEstimate(previous) {}

  std::complex<double> lastEstimate;
  std::complex<double> previousEstimate;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace udw
