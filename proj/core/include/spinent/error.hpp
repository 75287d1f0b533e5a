#pragma once

#include <stdexcept>
#include <string>

namespace spinent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied input was violated (bad lattice, bad site
/// index, malformed file, unknown option).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numerical validity check failed: a matrix that should be PSD is not, a
/// correlator set violates positivity, a spectrum has a negative eigenvalue.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver stopped without meeting its tolerance.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double best_residual, int iterations)
      : NumericalError(what), best_residual_(best_residual), iterations_(iterations) {}

  double best_residual() const noexcept { return best_residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double best_residual_;
  int iterations_;
};

}  // namespace spinent
