#pragma once

#include <stdexcept>
#include <string>

namespace qrabi {

/// Base class for all qrabi errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coupling g is outside the interval on which the requested operation is defined.
class CouplingOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Evaluation was requested within pole_guard of a pole of the spectral function.
class PoleProximity : public Error {
 public:
  PoleProximity(double x, long pole)
      : Error("x=" + std::to_string(x) + " is within pole guard of pole n=" +
              std::to_string(pole)),
        x_(x),
        pole_(pole) {}

  double x() const { return x_; }
  long pole() const { return pole_; }

 private:
  double x_;
  long pole_;
};

/// The qubit splitting is zero; the spectral-determinant formalism degenerates.
/// Use the diagonalization oracle instead (the spectrum is analytic there).
class DeltaZero : public Error {
 public:
  DeltaZero() : Error("delta=0 is not supported on spectral-function paths") {}
};

/// Series truncation limit reached before the tail criterion was met.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Sign pattern on the scan grid stayed inconsistent after refinement.
class GridResolutionExceeded : public Error {
 public:
  using Error::Error;
};

/// Bargmann index or parity invalid for the requested model family.
class InvalidSector : public Error {
 public:
  using Error::Error;
};

/// A closed-form condition has no solution for the given parameters.
class NoSolution : public Error {
 public:
  using Error::Error;
};

/// Pole-lifting verification detected 1/h growth where a lifted pole was claimed.
class LiftingFailed : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration (CLI-level validation).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qrabi
