#pragma once

#include <stdexcept>
#include <string>

namespace qgauge {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller-side contract violations: malformed inputs, bad configuration.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class GridMismatchError : public DimensionError {
 public:
  using DimensionError::DimensionError;
};

class ConfigError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Failures that only show up while computing.
class NumericError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public NumericError {
 public:
  using NumericError::NumericError;
};

class HermiticityError : public NumericError {
 public:
  using NumericError::NumericError;
};

class PoleError : public NumericError {
 public:
  using NumericError::NumericError;
};

// The decoupled second-order form is not available for this system.
class UnsupportedSystemError : public NumericError {
 public:
  using NumericError::NumericError;
};

class FrequencyAssignmentError : public NumericError {
 public:
  FrequencyAssignmentError(const std::string& what, int port)
      : NumericError(what), port_(port) {}

  // 1-based port index.
  int port() const noexcept { return port_; }

 private:
  int port_;
};

}  // namespace qgauge
