#pragma once

#include <stdexcept>
#include <string>

namespace spinflip {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the domain of a formula (negative frequency, NaN, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions. Carries the best estimate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double estimate_magnitude, double error_bound)
      : Error(what), estimate_magnitude_(estimate_magnitude), error_bound_(error_bound) {}

  double estimate_magnitude() const noexcept { return estimate_magnitude_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_magnitude_;
  double error_bound_;
};

/// A semi-infinite integral whose panel contributions do not die out.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Root finder called without a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Vanishing denominator in a reflection or multiple-scattering coefficient.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Frequency outside the validity range of a conductivity model.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Result failed an internal sanity check (non-finite value and the like).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Bad or unknown configuration entry.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Output could not be opened or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinflip
