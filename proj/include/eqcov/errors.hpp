#ifndef EQCOV_ERRORS_HPP
#define EQCOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eqcov {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input data contains NaN/Inf or is structurally malformed.
struct InvalidDataError : Error {
  using Error::Error;
};

// Argument outside the mathematical domain of an operation
// (nonpositive eigenvalue, matrix not positive definite, ...).
struct DomainError : Error {
  using Error::Error;
};

// An iterative numerical routine failed to converge.
struct NumericalError : Error {
  NumericalError(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

// Spectrum too clustered for a gap-dividing operation.
struct GapError : Error {
  GapError(const std::string& what, int index_a, int index_b)
      : Error(what), index_a(index_a), index_b(index_b) {}
  int index_a;
  int index_b;
};

// Exact zero denominator in a shrinkage or transform formula.
struct SingularityError : Error {
  using Error::Error;
};

// Invalid configuration (CLI / simulation setup).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace eqcov

#endif
