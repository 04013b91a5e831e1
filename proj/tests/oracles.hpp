// Independent reference implementations used only by the tests.  Each
// one recomputes a quantity the library produces, by a different
// algorithm, so agreement is evidence rather than tautology.
#ifndef SMILAB_TESTS_ORACLES_HPP
#define SMILAB_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "smilab/matrix.hpp"

namespace oracles {

// Determinant by recursive cofactor expansion along the first row.
// Factorial cost; intended for n <= 8.
inline double det_cofactor(const smilab::Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det_cofactor: non-square");
  const int n = m.rows();
  if (n == 0) return 1.0;
  if (n == 1) return m(0, 0);
  double acc = 0.0;
  double sign = 1.0;
  for (int j = 0; j < n; ++j) {
    smilab::Matrix sub(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        sub(r - 1, cc++) = m(r, c);
      }
    }
    acc += sign * m(0, j) * det_cofactor(sub);
    sign = -sign;
  }
  return acc;
}

// Minor by boolean-mask bookkeeping: an entry (i, j) of the input
// survives iff neither index is masked, and its position in the output
// is the count of unmasked indices before it.
inline smilab::Matrix minor_mask(const smilab::Matrix& m, const std::vector<int>& rows,
                                 const std::vector<int>& cols) {
  std::vector<bool> rmask(static_cast<std::size_t>(m.rows()), false);
  std::vector<bool> cmask(static_cast<std::size_t>(m.cols()), false);
  for (int r : rows) rmask[static_cast<std::size_t>(r)] = true;
  for (int c : cols) cmask[static_cast<std::size_t>(c)] = true;
  smilab::Matrix out(m.rows() - static_cast<int>(rows.size()),
                     m.cols() - static_cast<int>(cols.size()));
  int ri = 0;
  for (int i = 0; i < m.rows(); ++i) {
    if (rmask[static_cast<std::size_t>(i)]) continue;
    int ci = 0;
    for (int j = 0; j < m.cols(); ++j) {
      if (cmask[static_cast<std::size_t>(j)]) continue;
      out(ri, ci++) = m(i, j);
    }
    ++ri;
  }
  return out;
}

// Number of eigenvalues of a symmetric matrix strictly below x, by
// Sylvester's law of inertia applied to an unpivoted LDL^T elimination
// of (A - x I).  A vanishing pivot is nudged by a tiny relative amount,
// which moves x off an exact eigenvalue without changing the count at
// the bisection tolerance.
inline int eigs_below(const smilab::SymMatrix& a, double x) {
  const int n = a.n();
  std::vector<double> w(static_cast<std::size_t>(n) * n);
  double scale = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = a(i, j) - (i == j ? x : 0.0);
      w[static_cast<std::size_t>(i) * n + j] = v;
      scale = std::max(scale, std::fabs(v));
    }
  int negatives = 0;
  for (int k = 0; k < n; ++k) {
    double pivot = w[static_cast<std::size_t>(k) * n + k];
    if (std::fabs(pivot) < 1e-300) pivot = (pivot < 0 ? -1.0 : 1.0) * 1e-30 * scale;
    if (pivot < 0.0) ++negatives;
    for (int i = k + 1; i < n; ++i) {
      const double f = w[static_cast<std::size_t>(i) * n + k] / pivot;
      for (int j = k; j < n; ++j)
        w[static_cast<std::size_t>(i) * n + j] -= f * w[static_cast<std::size_t>(k) * n + j];
    }
  }
  return negatives;
}

// All eigenvalues by pure bisection on the inertia count, bracketed by
// Gershgorin discs.  Independent of any similarity-transform solver.
inline std::vector<double> sym_eigenvalues_bisect(const smilab::SymMatrix& a,
                                                  double tol = 1e-12) {
  const int n = a.n();
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) radius += std::fabs(a(i, j));
    lo = std::min(lo, a(i, i) - radius);
    hi = std::max(hi, a(i, i) + radius);
  }
  lo -= 1.0;
  hi += 1.0;
  std::vector<double> out;
  for (int k = 1; k <= n; ++k) {  // k-th smallest
    double a0 = lo, b0 = hi;
    for (int iter = 0; iter < 200 && b0 - a0 > tol * (1.0 + std::fabs(a0) + std::fabs(b0));
         ++iter) {
      const double mid = 0.5 * (a0 + b0);
      if (eigs_below(a, mid) >= k)
        b0 = mid;
      else
        a0 = mid;
    }
    out.push_back(0.5 * (a0 + b0));
  }
  return out;
}

// Characteristic-polynomial coefficients of a symmetric matrix from
// n + 1 determinant evaluations at integer nodes, via a hand-rolled
// Vandermonde solve (Gaussian elimination with partial pivoting on the
// node-power system).  p(x) = det(A - x I).
inline std::vector<double> charpoly_fit(const smilab::SymMatrix& a) {
  const int n = a.n();
  const int m = n + 1;
  std::vector<double> vand(static_cast<std::size_t>(m) * m);
  std::vector<double> rhs(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    const double x = static_cast<double>(r) - 0.5 * n;
    double pw = 1.0;
    for (int c = 0; c < m; ++c) {
      vand[static_cast<std::size_t>(r) * m + c] = pw;
      pw *= x;
    }
    smilab::Matrix shifted = a.full();
    for (int i = 0; i < n; ++i) shifted(i, i) -= x;
    rhs[static_cast<std::size_t>(r)] = smilab::det(shifted);
  }
  for (int k = 0; k < m; ++k) {
    int piv = k;
    for (int r = k + 1; r < m; ++r)
      if (std::fabs(vand[static_cast<std::size_t>(r) * m + k]) >
          std::fabs(vand[static_cast<std::size_t>(piv) * m + k]))
        piv = r;
    for (int c = 0; c < m; ++c)
      std::swap(vand[static_cast<std::size_t>(k) * m + c],
                vand[static_cast<std::size_t>(piv) * m + c]);
    std::swap(rhs[static_cast<std::size_t>(k)], rhs[static_cast<std::size_t>(piv)]);
    for (int r = k + 1; r < m; ++r) {
      const double f =
          vand[static_cast<std::size_t>(r) * m + k] / vand[static_cast<std::size_t>(k) * m + k];
      for (int c = k; c < m; ++c)
        vand[static_cast<std::size_t>(r) * m + c] -= f * vand[static_cast<std::size_t>(k) * m + c];
      rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(k)];
    }
  }
  std::vector<double> coef(static_cast<std::size_t>(m));
  for (int r = m - 1; r >= 0; --r) {
    double acc = rhs[static_cast<std::size_t>(r)];
    for (int c = r + 1; c < m; ++c)
      acc -= vand[static_cast<std::size_t>(r) * m + c] * coef[static_cast<std::size_t>(c)];
    coef[static_cast<std::size_t>(r)] = acc / vand[static_cast<std::size_t>(r) * m + r];
  }
  return coef;  // c0 + c1 x + ... + cn x^n
}

inline double polyval(const std::vector<double>& coef, double x) {
  double acc = 0.0;
  for (std::size_t k = coef.size(); k-- > 0;) acc = acc * x + coef[k];
  return acc;
}

// Binomial CDF P(Bin(n, p) <= x) summed in log space.
inline double binom_cdf(std::int64_t x, std::int64_t n, double p) {
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return x >= n ? 1.0 : 0.0;
  double acc = 0.0;
  for (std::int64_t k = 0; k <= x; ++k) {
    const double lg = std::lgamma(static_cast<double>(n) + 1.0) -
                      std::lgamma(static_cast<double>(k) + 1.0) -
                      std::lgamma(static_cast<double>(n - k) + 1.0) +
                      static_cast<double>(k) * std::log(p) +
                      static_cast<double>(n - k) * std::log1p(-p);
    acc += std::exp(lg);
  }
  return acc < 1.0 ? acc : 1.0;
}

// One-sided exact binomial bounds by direct bisection on the CDF, the
// defining property rather than any beta-function identity:
//   upper: smallest p with P(Bin(n,p) <= x) <= alpha
//   lower: largest  p with P(Bin(n,p) >= x) <= alpha
inline double cp_upper_bisect(std::int64_t x, std::int64_t n, double alpha) {
  if (x >= n) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 100; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (binom_cdf(x, n, mid) > alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline double cp_lower_bisect(std::int64_t x, std::int64_t n, double alpha) {
  if (x <= 0) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 100; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double tail = 1.0 - binom_cdf(x - 1, n, mid);  // P(Bin >= x)
    if (tail > alpha)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Sum of squares in reverse order with Kahan compensation.
inline double hs_norm_kahan_reversed(const smilab::Matrix& m) {
  double acc = 0.0, comp = 0.0;
  for (int i = m.rows() - 1; i >= 0; --i)
    for (int j = m.cols() - 1; j >= 0; --j) {
      const double y = m(i, j) * m(i, j) - comp;
      const double t = acc + y;
      comp = (t - acc) - y;
      acc = t;
    }
  return std::sqrt(acc);
}

// Endpoints of the positive component of {x : |x - s/x| < eps} by
// bisection on the increasing function x - s/x.
inline double anticoncentration_root_bisect(double s, double target) {
  double lo = 1e-300, hi = std::max(4.0 * std::fabs(target), 4.0 * std::sqrt(s)) + 1.0;
  for (int iter = 0; iter < 500; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid - s / mid < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// sup over t > 0 of t * P(|standard Cauchy| > t) = sup t (2/pi) atan(1/t),
// approached monotonically from below as t grows.
inline double cauchy_weak_l1_target() {
  double best = 0.0;
  for (double t = 0.01; t < 1e8; t *= 1.05)
    best = std::max(best, t * (2.0 / 3.14159265358979323846) * std::atan(1.0 / t));
  return best;
}

}  // namespace oracles

#endif
