#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace mlnf {

// evaluation asked for coincident field/source points
class CoincidenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// point within the surface-ambiguity shell of the sphere boundary
class SurfaceAmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// series not converged at the coefficient cap; carries last increment
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& msg, double last_increment)
      : std::runtime_error(msg), last_increment_(last_increment) {}
  double last_increment() const { return last_increment_; }

 private:
  double last_increment_;
};

// regularized integral failed to extrapolate; carries partial value/error
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, std::complex<double> partial,
                   double error_estimate)
      : std::runtime_error(msg), partial_(partial), error_(error_estimate) {}
  std::complex<double> partial_value() const { return partial_; }
  double error_estimate() const { return error_; }

 private:
  std::complex<double> partial_;
  double error_;
};

// dispersion model violating passivity where required
class ModelViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// frequency grid does not cover the pole support
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mlnf
