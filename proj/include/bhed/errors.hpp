#pragma once

#include <stdexcept>
#include <string>

namespace bhed {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Basis dimension does not fit the index type.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Occupation state is not a member of the basis table.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a function (bad site, cut, radicand...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operand sizes disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Iterative eigensolver hit its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// Time propagation could not reach the requested accuracy.
class PropagationError : public Error {
 public:
  using Error::Error;
};

/// Malformed or invalid run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace bhed
