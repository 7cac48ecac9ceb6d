#pragma once

#include <stdexcept>
#include <string>

namespace evenodd {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonUnitaryOperator : public Error {
 public:
  explicit NonUnitaryOperator(double residual)
      : Error("operator is not unitary (max |UU^dagger - I| = " +
              std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class DegenerateComparison : public Error {
 public:
  DegenerateComparison() : Error("reference matrix is zero") {}
};

class NotDiagonalPmOne : public Error {
 public:
  NotDiagonalPmOne() : Error("matrix is not diagonal with +/-1 entries") {}
};

class ZeroState : public Error {
 public:
  ZeroState() : Error("initial state has k1 = k2 = 0") {}
};

class NotPure : public Error {
 public:
  NotPure() : Error("density matrix is not a rank-1 projector of unit trace") {}
};

class AmbiguousReadout : public Error {
 public:
  using Error::Error;
};

class BadAcquisition : public Error {
 public:
  using Error::Error;
};

class UnsupportedGate : public Error {
 public:
  explicit UnsupportedGate(const std::string& name)
      : Error("unsupported gate: '" + name + "'") {}
};

class CompilationMismatch : public Error {
 public:
  CompilationMismatch(const std::string& gate, double residual)
      : Error("compiled program for " + gate +
              " does not reproduce the gate (residual " +
              std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Malformed user input: truth tables, gate names, config files, JSON.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace evenodd
