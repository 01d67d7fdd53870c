#pragma once

#include <stdexcept>
#include <string>

namespace kronlab {

// Base of every error raised by the library. The CLI maps subclasses of
// ConfigError to exit code 2 and subclasses of GeneratorError to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class GeneratorError : public Error {
 public:
  using Error::Error;
};

class InvalidInitiator : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class InfeasibleScaling : public ConfigError {
 public:
  InfeasibleScaling(const std::string& what, double entry, double bound)
      : ConfigError(what), entry_(entry), bound_(bound) {}
  double entry() const noexcept { return entry_; }
  double bound() const noexcept { return bound_; }

 private:
  double entry_;
  double bound_;
};

class WidthMismatch : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class DomainError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class DegenerateRatio : public DomainError {
 public:
  using DomainError::DomainError;
};

class Rho1TooLarge : public DomainError {
 public:
  using DomainError::DomainError;
};

class DimensionMismatch : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class DegenerateInitiator : public GeneratorError {
 public:
  using GeneratorError::GeneratorError;
};

class CapacityExceeded : public GeneratorError {
 public:
  using GeneratorError::GeneratorError;
};

class RethrowLimit : public GeneratorError {
 public:
  using GeneratorError::GeneratorError;
};

class SizeLimit : public GeneratorError {
 public:
  using GeneratorError::GeneratorError;
};

class ParseError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace kronlab
