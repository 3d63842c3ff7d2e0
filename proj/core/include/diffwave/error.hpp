#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace diffwave {

enum class ErrorKind {
  kConfig,     // invalid parameters or configuration
  kShooting,   // profile shooting failed to converge
  kBlowup,     // solver produced non-finite or huge values
  kNumerical,  // singular pivot, degenerate fit, ...
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::kConfig, what) {}
};

class ShootingError : public Error {
 public:
  explicit ShootingError(const std::string& what) : Error(ErrorKind::kShooting, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::kNumerical, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

/// Raised by the time stepper; carries the time at which the state went bad.
class BlowupError : public Error {
 public:
  BlowupError(double time, const std::string& what);
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace diffwave
