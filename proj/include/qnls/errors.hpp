#pragma once

#include <stdexcept>
#include <string>

namespace qnls {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative or integration failure. Carries the last state when one exists.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what, double r = 0.0, double v = 0.0,
                        double dv = 0.0)
      : std::runtime_error(what), r_(r), v_(v), dv_(dv) {}
  double r() const { return r_; }
  double v() const { return v_; }
  double dv() const { return dv_; }

 private:
  double r_, v_, dv_;
};

/// The shooting scan found only one trajectory class.
class NoBracketError : public std::runtime_error {
 public:
  NoBracketError(const std::string& what, double lambda)
      : std::runtime_error(what), lambda_(lambda) {}
  double lambda() const { return lambda_; }

 private:
  double lambda_;
};

class MaxIterationsError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Invalid or unknown configuration entry.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qnls
