#pragma once

#include <stdexcept>
#include <string>

namespace squeezelab {

// Argument outside the mathematical domain of an operation (non-finite
// frequency, negative nonlinearity, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Photon statistics requested where the mean photon rate vanishes.
class UndefinedStatisticsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Missing or inconsistent scenario parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical quadrature did not reach the requested tolerance.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace squeezelab
