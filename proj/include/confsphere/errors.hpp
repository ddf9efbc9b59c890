#pragma once

#include <stdexcept>
#include <string>

namespace confsphere {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible dimension or rank.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Jet orders disagree, or an operation needs more derivative levels than stored.
class JetOrderError : public Error {
 public:
  using Error::Error;
};

/// Division by, or an elementary function outside its domain at, a jet whose
/// constant term is inadmissible.
class SingularJetError : public Error {
 public:
  using Error::Error;
};

/// A formula's precondition fails at the evaluation point (u = 0, bad index
/// pattern, invalid family parameters, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An invariant is undefined on the given curve (e.g. kappa_1 when Delta_4 >= 0).
class UndefinedInvariantError : public Error {
 public:
  using Error::Error;
};

/// The Hamiltonian flow reached a point with (numerically) vanishing velocity.
class DegeneracyError : public Error {
 public:
  DegeneracyError(double t, const std::string& what) : Error(what), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

/// A run configuration is invalid; field() names the offending option.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace confsphere
