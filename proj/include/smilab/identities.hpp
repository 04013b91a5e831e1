#ifndef SMILAB_IDENTITIES_HPP
#define SMILAB_IDENTITIES_HPP

#include <cstdint>
#include <vector>

#include "smilab/ensembles.hpp"
#include "smilab/tail_stats.hpp"

namespace smilab {

// Dependence of det(A) on one entry, fitted from determinant samples.
// Varying a diagonal entry gives an exact linear polynomial; varying an
// off-diagonal entry moves the symmetric pair (i,j),(j,i) together and
// gives an exact quadratic.  coefficients is {c0, c1, c2} for
// c0 + c1 x + c2 x^2; residual is the largest absolute deviation of the
// fit over the probe set, and scale the largest |det| seen there, so
// residual < 1e-9 * scale certifies genuine polynomial dependence.
struct PolyFit {
  std::vector<double> coefficients;
  double residual = 0.0;
  double scale = 0.0;

  bool operator==(const PolyFit& o) const = default;
};

// Freezes every entry of a except (i,j) (and (j,i), mirrored), then
// interpolates det(A(x)) on x in {-s, 0, s}, s = 1 + ||A||_HS, and
// measures the residual over the wider probe set {-2s, -s, 0, s, 2s}.
// Indices are 0-based.
PolyFit fit_entry_dependence(const SymMatrix& a, int i, int j);

// Parameters of the rational form of one off-diagonal inverse entry:
// with x the value of the entry pair (i,j),(j,i) and all other entries
// frozen,
//   |A^{-1}(x)_{i,j}| = |x + p| / |(x + p)^2 + q|
// wherever A(x) is nonsingular.  leading is the fitted quadratic
// coefficient of det(A(x)); degenerate is set when |leading| falls at
// or below 1e-10 of the median second-minor magnitude, in which case p
// holds the root of the (linear) numerator and q is NaN.
struct RationalEntryForm {
  int i = 0;
  int j = 0;
  double p = 0.0;
  double q = 0.0;
  bool degenerate = false;
  double leading = 0.0;
};

// Builds the rational form from the fitted quadratic of det(A(x)) and
// the fitted linear numerator det of the (i,j) minor.  Requires i != j
// (diagonal entries have a linear form; see fit_entry_dependence).
RationalEntryForm fit_rational_entry_form(const SymMatrix& a, int i, int j);

// |x + p| / |(x + p)^2 + q| for a non-degenerate form.
// Throws DomainError on a degenerate one.
double eval_rational_entry(const RationalEntryForm& form, double x);

// Relative residual between the two sides of the determinant
// derivative identity
//   d/dt det(A + tE) at t=0  ==  trace(adj(A) E),
// the left side by central differences with step 1e-5 * (1 + ||A||_HS).
// Small (< 1e-5) for moderate n with entries of order one.
double verify_jacobi(const SymMatrix& a, const SymMatrix& e);

// The sublevel set {x : |x - s/x| < eps}, s > 0, has exactly two
// components, one on each side of zero, mirror images of each other:
// the positive one is (x_lo, x_hi) with
//   x_hi = (eps + sqrt(eps^2 + 4s)) / 2
//   x_lo = 2s / (eps + sqrt(eps^2 + 4s))
// (the second form avoids cancellation when eps^2 >> s).  Because
// d/dx (x - s/x) = 1 + s/x^2 > 1, each component is shorter than 2 eps;
// in fact x_hi - x_lo = eps exactly.
struct AnticoncentrationResult {
  double x_lo = 0.0;  // positive component endpoints
  double x_hi = 0.0;
  std::vector<double> component_lengths;  // negative component first
  double total_measure = 0.0;
};

AnticoncentrationResult anticoncentration_measure(double s, double eps);

// Tail of a single inverse entry |A^{-1}_{i,j}| (0-based indices) for a
// continuous symmetric ensemble with arbitrary shift: thresholds are
// the t values themselves, bound 2K/t, exceedance strict (> t).
TailReport verify_entry_tail_pointwise(const EnsembleSpec& spec, int i, int j,
                                       std::int64_t trials, const std::vector<double>& t_grid,
                                       std::uint64_t master_seed, int workers);

}  // namespace smilab

#endif
