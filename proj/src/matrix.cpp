#include "smilab/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

namespace smilab {

namespace {

// Relative pivot floor used by the elimination-based singularity check.
constexpr double kPivotRel = 1e3 * std::numeric_limits<double>::epsilon();

bool bits_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

struct LuFactors {
  Matrix lu;                // L below the diagonal (unit), U on and above
  std::vector<int> perm;    // row permutation
  int sign = 1;
  double max_pivot = 0.0;
  double min_pivot = 0.0;
};

// Partial-pivoted LU of a square matrix.  Does not throw on singular
// input; callers inspect the pivot magnitudes.
LuFactors lu_factor(const Matrix& m) {
  const int n = m.rows();
  LuFactors f;
  f.lu = m;
  f.perm.resize(n);
  for (int i = 0; i < n; ++i) f.perm[i] = i;
  f.max_pivot = 0.0;
  f.min_pivot = n > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  Matrix& a = f.lu;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::fabs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::fabs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    const double pivot = a(k, k);
    f.max_pivot = std::max(f.max_pivot, std::fabs(pivot));
    f.min_pivot = std::min(f.min_pivot, std::fabs(pivot));
    if (pivot == 0.0) continue;  // exactly singular; remaining pivots stay 0
    for (int i = k + 1; i < n; ++i) {
      const double factor = a(i, k) / pivot;
      a(i, k) = factor;
      if (factor != 0.0) {
        for (int j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
      }
    }
  }
  return f;
}

bool lu_singular(const LuFactors& f) {
  if (f.lu.rows() == 0) return false;
  return f.min_pivot <= kPivotRel * f.max_pivot;
}

// Solves a x = b in place given the factorization.
void lu_solve(const LuFactors& f, std::vector<double>& x, const std::vector<double>& b) {
  const int n = f.lu.rows();
  x.resize(n);
  for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (int i = 1; i < n; ++i) {
    double s = x[i];
    for (int j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s / f.lu(i, i);
  }
}

void require_square(const Matrix& m, const char* op) {
  if (!m.square()) {
    throw DimensionError(std::string(op) + ": matrix must be square, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// Validates a removal list and returns the sorted surviving indices.
std::vector<int> surviving(int extent, const std::vector<int>& removed, const char* kind) {
  std::vector<bool> gone(static_cast<std::size_t>(extent), false);
  for (int r : removed) {
    if (r < 0 || r >= extent) {
      throw IndexError(std::string("minor_matrix: ") + kind + " index " + std::to_string(r) +
                       " out of range [0, " + std::to_string(extent) + ")");
    }
    if (gone[static_cast<std::size_t>(r)]) {
      throw IndexError(std::string("minor_matrix: repeated ") + kind + " index " +
                       std::to_string(r));
    }
    gone[static_cast<std::size_t>(r)] = true;
  }
  std::vector<int> keep;
  keep.reserve(static_cast<std::size_t>(extent) - removed.size());
  for (int i = 0; i < extent; ++i) {
    if (!gone[static_cast<std::size_t>(i)]) keep.push_back(i);
  }
  return keep;
}

}  // namespace

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw DimensionError("Matrix: negative dimension");
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0);
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("operator*: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("operator+: shapes differ");
  Matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("operator-: shapes differ");
  Matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

Matrix operator*(double c, const Matrix& a) {
  Matrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = c * a(i, j);
  return r;
}

SymMatrix::SymMatrix(int n) : full_(n, n) {
  if (n < 1) throw DimensionError("SymMatrix: order must be >= 1");
}

SymMatrix SymMatrix::from_matrix(const Matrix& m) {
  if (!m.square() || m.rows() < 1)
    throw DimensionError("SymMatrix::from_matrix: need a square matrix of order >= 1");
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = i + 1; j < m.cols(); ++j) {
      if (!bits_equal(m(i, j), m(j, i))) {
        throw SymmetryError("SymMatrix::from_matrix: entries (" + std::to_string(i) + "," +
                            std::to_string(j) + ") and mirror are not bitwise equal");
      }
    }
  }
  SymMatrix s(m.rows());
  s.full_ = m;
  return s;
}

SymMatrix SymMatrix::scaled(double c) const {
  SymMatrix s(n());
  for (int i = 0; i < n(); ++i)
    for (int j = i; j < n(); ++j) s.set(i, j, c * (*this)(i, j));
  return s;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  if (a.n() != b.n()) throw DimensionError("SymMatrix operator+: orders differ");
  SymMatrix c(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = i; j < a.n(); ++j) c.set(i, j, a(i, j) + b(i, j));
  return c;
}

double det(const Matrix& m) {
  require_square(m, "det");
  const int n = m.rows();
  if (n == 0) return 1.0;
  LuFactors f = lu_factor(m);
  double d = static_cast<double>(f.sign);
  for (int i = 0; i < n; ++i) d *= f.lu(i, i);
  return d;
}

Matrix minor_matrix(const Matrix& m, const std::vector<int>& removed_rows,
                    const std::vector<int>& removed_cols) {
  const std::vector<int> rows = surviving(m.rows(), removed_rows, "row");
  const std::vector<int> cols = surviving(m.cols(), removed_cols, "column");
  Matrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<int>(i), static_cast<int>(j)) = m(rows[i], cols[j]);
  return out;
}

Matrix adjugate(const Matrix& m) {
  require_square(m, "adjugate");
  const int n = m.rows();
  if (n < 1) throw DimensionError("adjugate: order must be >= 1");
  Matrix adj(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double cof = det(minor_matrix(m, {i}, {j}));
      adj(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
    }
  }
  return adj;
}

double hs_norm(const Matrix& m) {
  double s = 0.0;
  const double* p = m.data();
  const std::size_t total = static_cast<std::size_t>(m.rows()) * m.cols();
  for (std::size_t i = 0; i < total; ++i) s += p[i] * p[i];
  return std::sqrt(s);
}

Matrix inverse(const Matrix& a) {
  require_square(a, "inverse");
  const int n = a.rows();
  if (n < 1) throw DimensionError("inverse: order must be >= 1");
  LuFactors f = lu_factor(a);
  if (lu_singular(f)) {
    throw SingularMatrixError("inverse: matrix is singular at working precision",
                              f.min_pivot);
  }
  Matrix inv(n, n);
  std::vector<double> b(static_cast<std::size_t>(n), 0.0), x;
  for (int j = 0; j < n; ++j) {
    b[static_cast<std::size_t>(j)] = 1.0;
    lu_solve(f, x, b);
    b[static_cast<std::size_t>(j)] = 0.0;
    for (int i = 0; i < n; ++i) inv(i, j) = x[static_cast<std::size_t>(i)];
  }
  return inv;
}

Matrix inverse(const SymMatrix& a) { return inverse(a.full()); }

double inverse_entry(const SymMatrix& a, int i, int j) {
  const int n = a.n();
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw IndexError("inverse_entry: index out of range");
  LuFactors f = lu_factor(a.full());
  if (lu_singular(f)) {
    throw SingularMatrixError("inverse_entry: matrix is singular at working precision",
                              f.min_pivot);
  }
  std::vector<double> b(static_cast<std::size_t>(n), 0.0), x;
  b[static_cast<std::size_t>(j)] = 1.0;
  lu_solve(f, x, b);
  return x[static_cast<std::size_t>(i)];
}

SymMatrix gram(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw DimensionError("gram: need a square matrix of order >= 1");
  const int n = m.rows();
  SymMatrix g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += m(k, i) * m(k, j);
      g.set(i, j, s);  // one computed value feeds both triangles
    }
  }
  return g;
}

double trace(const Matrix& m) {
  require_square(m, "trace");
  double t = 0.0;
  for (int i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

}  // namespace smilab
