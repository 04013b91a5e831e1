#include "smilab/eigen_sym.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smilab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSingularRel = 1e3 * kEps;

double pythag(double a, double b) { return std::hypot(a, b); }

// Householder reduction of a symmetric matrix to tridiagonal form.
// Works on a full copy; only eigenvalues are needed, so the orthogonal
// factor is not accumulated.  On return d holds the diagonal and e the
// subdiagonal (e has n-1 entries).
void tridiagonalize(Matrix a, std::vector<double>& d, std::vector<double>& e) {
  const int n = a.rows();
  d.assign(static_cast<std::size_t>(n), 0.0);
  e.assign(static_cast<std::size_t>(n > 0 ? n - 1 : 0), 0.0);
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  std::vector<double> u(static_cast<std::size_t>(n), 0.0);

  for (int k = 0; k + 2 < n; ++k) {
    // Column k below the diagonal.
    double scale = 0.0;
    for (int i = k + 1; i < n; ++i) scale += std::fabs(a(i, k));
    if (scale == 0.0) {
      e[static_cast<std::size_t>(k)] = 0.0;
      continue;
    }
    double norm2 = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[static_cast<std::size_t>(i)] = a(i, k) / scale;
      norm2 += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    }
    double sigma = std::sqrt(norm2);
    const double x0 = v[static_cast<std::size_t>(k + 1)];
    const double alpha = x0 >= 0.0 ? -sigma : sigma;
    e[static_cast<std::size_t>(k)] = scale * alpha;

    // Householder vector v = x - alpha e1, normalized.
    v[static_cast<std::size_t>(k + 1)] = x0 - alpha;
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i)
      vnorm2 += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    if (vnorm2 == 0.0) continue;  // column already in tridiagonal shape
    const double vnorm = std::sqrt(vnorm2);
    for (int i = k + 1; i < n; ++i) v[static_cast<std::size_t>(i)] /= vnorm;

    // Symmetric rank-2 update of the trailing block:
    //   A <- A - v u^T - u v^T,  u = 2 (A v - (v^T A v) v)
    for (int i = k + 1; i < n; ++i) {
      double s = 0.0;
      for (int j = k + 1; j < n; ++j) s += a(i, j) * v[static_cast<std::size_t>(j)];
      w[static_cast<std::size_t>(i)] = s;
    }
    double kappa = 0.0;
    for (int i = k + 1; i < n; ++i)
      kappa += v[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
    for (int i = k + 1; i < n; ++i)
      u[static_cast<std::size_t>(i)] =
          2.0 * (w[static_cast<std::size_t>(i)] - kappa * v[static_cast<std::size_t>(i)]);
    for (int i = k + 1; i < n; ++i) {
      const double vi = v[static_cast<std::size_t>(i)];
      const double ui = u[static_cast<std::size_t>(i)];
      for (int j = k + 1; j < n; ++j) {
        a(i, j) -= vi * u[static_cast<std::size_t>(j)] + ui * v[static_cast<std::size_t>(j)];
      }
    }
  }
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = a(i, i);
  if (n >= 2) e[static_cast<std::size_t>(n - 2)] = a(n - 1, n - 2);
}

// QL algorithm with implicit shifts on a tridiagonal matrix; eigenvalues
// only.  d/e as produced by tridiagonalize.
void ql_implicit(std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  e.push_back(0.0);  // scratch slot e[n-1]
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[static_cast<std::size_t>(m)]) +
                          std::fabs(d[static_cast<std::size_t>(m + 1)]);
        if (std::fabs(e[static_cast<std::size_t>(m)]) <= kEps * dd) break;
      }
      if (m != l) {
        if (iter++ == 50) throw ConvergenceError("sym_eigenvalues: QL sweep budget exhausted");
        double g = (d[static_cast<std::size_t>(l + 1)] - d[static_cast<std::size_t>(l)]) /
                   (2.0 * e[static_cast<std::size_t>(l)]);
        double r = pythag(g, 1.0);
        g = d[static_cast<std::size_t>(m)] - d[static_cast<std::size_t>(l)] +
            e[static_cast<std::size_t>(l)] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[static_cast<std::size_t>(i)];
          const double b = c * e[static_cast<std::size_t>(i)];
          r = pythag(f, g);
          e[static_cast<std::size_t>(i + 1)] = r;
          if (r == 0.0) {
            d[static_cast<std::size_t>(i + 1)] -= p;
            e[static_cast<std::size_t>(m)] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[static_cast<std::size_t>(i + 1)] - p;
          r = (d[static_cast<std::size_t>(i)] - g) * s + 2.0 * c * b;
          p = s * r;
          d[static_cast<std::size_t>(i + 1)] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[static_cast<std::size_t>(l)] -= p;
        e[static_cast<std::size_t>(l)] = g;
        e[static_cast<std::size_t>(m)] = 0.0;
      }
    } while (m != l);
  }
  e.pop_back();
}

}  // namespace

double Spectrum::min_abs() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : eigenvalues) m = std::min(m, std::fabs(v));
  return m;
}

double Spectrum::max_abs() const {
  double m = 0.0;
  for (double v : eigenvalues) m = std::max(m, std::fabs(v));
  return m;
}

Spectrum sym_eigenvalues(const SymMatrix& a) {
  std::vector<double> d, e;
  tridiagonalize(a.full(), d, e);
  ql_implicit(d, e);
  std::sort(d.begin(), d.end());
  return Spectrum{std::move(d)};
}

double inverse_op_norm(const SymMatrix& a) {
  const Spectrum s = sym_eigenvalues(a);
  const double lo = s.min_abs();
  const double hi = s.max_abs();
  if (lo <= kSingularRel * hi) {
    throw SingularMatrixError("inverse_op_norm: matrix is singular at working precision", lo);
  }
  return 1.0 / lo;
}

}  // namespace smilab
