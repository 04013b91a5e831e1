#ifndef SMILAB_MATRIX_HPP
#define SMILAB_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "smilab/errors.hpp"

namespace smilab {

// Dense real matrix, row-major.  The 0x0 matrix is legal and has
// determinant 1 (empty product), which keeps minor/adjugate recursions
// closed at the bottom.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols);
  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  Matrix transpose() const;

  bool operator==(const Matrix& o) const = default;

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double c, const Matrix& a);

// Symmetric matrix of order n >= 1.  Symmetry is exact: both triangles
// hold bit-identical values, enforced at every construction path.
class SymMatrix {
 public:
  explicit SymMatrix(int n);  // zero matrix

  // Validates exact (bitwise) symmetry of m; throws SymmetryError otherwise.
  static SymMatrix from_matrix(const Matrix& m);

  int n() const { return full_.rows(); }
  double operator()(int i, int j) const { return full_(i, j); }

  // Writes the same value into (i,j) and (j,i).
  void set(int i, int j, double v) {
    full_(i, j) = v;
    full_(j, i) = v;
  }

  const Matrix& full() const { return full_; }

  SymMatrix scaled(double c) const;

  bool operator==(const SymMatrix& o) const = default;

 private:
  Matrix full_;
};

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);

// Determinant by Gaussian elimination with partial pivoting.
// det of the 0x0 matrix is 1.  Throws DimensionError on non-square input.
double det(const Matrix& m);
inline double det(const SymMatrix& m) { return det(m.full()); }

// Minor: copy of m with the listed rows and columns removed, surviving
// order preserved.  Indices are 0-based; out-of-range or repeated
// indices throw IndexError.
Matrix minor_matrix(const Matrix& m, const std::vector<int>& removed_rows,
                    const std::vector<int>& removed_cols);

// Adjugate (transpose of the cofactor matrix):
//   adj(m)(j,i) = (-1)^(i+j) det(minor_matrix(m, {i}, {j}))
// so that m * adj(m) = det(m) * I with no nonsingularity assumption.
Matrix adjugate(const Matrix& m);

// Hilbert-Schmidt (Frobenius) norm.
double hs_norm(const Matrix& m);
inline double hs_norm(const SymMatrix& m) { return hs_norm(m.full()); }

// Inverse via pivoted elimination.  Throws SingularMatrixError when the
// smallest scaled pivot is below 1e3 * eps of the largest.
Matrix inverse(const SymMatrix& a);
Matrix inverse(const Matrix& a);

// Solves a x = e_j and returns x[i], i.e. entry (i,j) of a^{-1}, without
// forming the full inverse.  Same singularity policy as inverse().
double inverse_entry(const SymMatrix& a, int i, int j);

// Gram matrix m^T m, built symmetric by construction.
SymMatrix gram(const Matrix& m);

double trace(const Matrix& m);

}  // namespace smilab

#endif
