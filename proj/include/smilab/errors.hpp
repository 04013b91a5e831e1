#ifndef SMILAB_ERRORS_HPP
#define SMILAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace smilab {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatch: non-square input, incompatible operand sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Row/column index outside the matrix, or malformed index set.
class IndexError : public Error {
 public:
  using Error::Error;
};

// Input matrix failed the exact-symmetry check.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

// Matrix is singular at working precision.  `magnitude` carries the
// smallest |eigenvalue| (spectral path) or the smallest scaled pivot
// (elimination path) that triggered the rejection.
class SingularMatrixError : public Error {
 public:
  SingularMatrixError(const std::string& what, double magnitude)
      : Error(what), magnitude_(magnitude) {}
  double magnitude() const { return magnitude_; }

 private:
  double magnitude_;
};

// Argument outside an operation's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid experiment or ensemble description.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Operation asked for a distribution family it does not support.
class UnsupportedFamilyError : public Error {
 public:
  using Error::Error;
};

// Iterative kernel exceeded its sweep budget.  Not expected in practice.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Report files could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace smilab

#endif
