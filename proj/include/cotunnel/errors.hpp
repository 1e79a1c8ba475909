#pragma once

#include <stdexcept>
#include <string>

namespace cotunnel {

// Invalid physics configuration or malformed config input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A denominator factor is degenerate; carries the factor name.
class PoleError : public std::runtime_error {
 public:
  PoleError(std::string factor, double value)
      : std::runtime_error("pole: " + factor + " (value " + std::to_string(value) + ")"),
        factor_(std::move(factor)),
        value_(value) {}
  const std::string& factor() const { return factor_; }
  double value() const { return value_; }

 private:
  std::string factor_;
  double value_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical method failed to reach its accuracy target.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Data outside the regime an operation is defined for.
class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cotunnel
