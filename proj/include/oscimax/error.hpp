#ifndef OSCIMAX_ERROR_HPP
#define OSCIMAX_ERROR_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace oscimax {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Field handed to an operation in the wrong (spatial/frequency) representation.
class RepresentationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input violates an operation's stated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside the regime where a formula or theorem applies.
class RangeError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Too much spectral energy near the edge of the frequency grid.
class AliasingError : public Error {
 public:
  AliasingError(const std::string& msg, double boundary_fraction)
      : Error(msg), boundary_fraction_(boundary_fraction) {}
  double boundary_fraction() const { return boundary_fraction_; }

 private:
  double boundary_fraction_;
};

/// Numerical procedure failed to reach its accuracy target. Carries the best
/// estimate it did produce and the last observed refinement gap.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& msg, std::complex<double> best, double gap)
      : Error(msg), best_(best), gap_(gap) {}
  std::complex<double> best_estimate() const { return best_; }
  double gap() const { return gap_; }

 private:
  std::complex<double> best_;
  double gap_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace oscimax

#endif  // OSCIMAX_ERROR_HPP
