#ifndef SMILAB_EIGEN_SYM_HPP
#define SMILAB_EIGEN_SYM_HPP

#include <vector>

#include "smilab/matrix.hpp"

namespace smilab {

// Full real spectrum of a symmetric matrix, sorted ascending.
struct Spectrum {
  std::vector<double> eigenvalues;

  double min_abs() const;
  double max_abs() const;
};

// All eigenvalues of a symmetric matrix: Householder reduction to
// tridiagonal form followed by the QL algorithm with implicit shifts.
// Deterministic for identical input.  Throws ConvergenceError if a QL
// sweep budget is exhausted (not expected for finite input).
Spectrum sym_eigenvalues(const SymMatrix& a);

// Operator norm of a^{-1} for symmetric a: 1 / min_i |lambda_i|.
// Singularity policy: min|lambda| <= 1e3 * eps * max|lambda| throws
// SingularMatrixError carrying min|lambda|.
double inverse_op_norm(const SymMatrix& a);

}  // namespace smilab

#endif
