#include "smilab/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smilab {

namespace {

void check_index(const SymMatrix& a, int i, int j) {
  if (i < 0 || i >= a.n() || j < 0 || j >= a.n())
    throw IndexError("entry index outside the matrix");
}

// a with the symmetric pair (i,j),(j,i) set to x.
SymMatrix with_entry(const SymMatrix& a, int i, int j, double x) {
  SymMatrix b = a;
  b.set(i, j, x);
  return b;
}

// Median of |det| over all principal second minors (rows and columns
// {k,l} removed).  Sets the magnitude scale against which a fitted
// leading coefficient counts as zero.
double second_minor_scale(const SymMatrix& a) {
  std::vector<double> mags;
  for (int k = 0; k < a.n(); ++k)
    for (int l = k + 1; l < a.n(); ++l)
      mags.push_back(std::fabs(det(minor_matrix(a.full(), {k, l}, {k, l}))));
  if (mags.empty()) return 1.0;  // n == 1: no off-diagonal entries anyway
  std::sort(mags.begin(), mags.end());
  const std::size_t m = mags.size();
  return m % 2 == 1 ? mags[m / 2] : 0.5 * (mags[m / 2 - 1] + mags[m / 2]);
}

}  // namespace

PolyFit fit_entry_dependence(const SymMatrix& a, int i, int j) {
  check_index(a, i, j);
  const double s = 1.0 + hs_norm(a);

  // Three-point symmetric interpolation fixes the quadratic; the outer
  // probes at +-2s are held out and expose any higher-order term.
  const double d0 = det(with_entry(a, i, j, 0.0));
  const double dp = det(with_entry(a, i, j, s));
  const double dm = det(with_entry(a, i, j, -s));

  PolyFit fit;
  fit.coefficients = {d0, (dp - dm) / (2.0 * s), (dp + dm - 2.0 * d0) / (2.0 * s * s)};

  const double probes[] = {-2.0 * s, -s, 0.0, s, 2.0 * s};
  for (double x : probes) {
    const double dx = det(with_entry(a, i, j, x));
    const double fitted =
        fit.coefficients[0] + x * (fit.coefficients[1] + x * fit.coefficients[2]);
    fit.residual = std::max(fit.residual, std::fabs(dx - fitted));
    fit.scale = std::max(fit.scale, std::fabs(dx));
  }
  return fit;
}

RationalEntryForm fit_rational_entry_form(const SymMatrix& a, int i, int j) {
  check_index(a, i, j);
  if (i == j)
    throw DomainError(
        "fit_rational_entry_form: diagonal entries are linear; use fit_entry_dependence");

  const PolyFit den = fit_entry_dependence(a, i, j);
  const double alpha = den.coefficients[2];
  const double beta = den.coefficients[1];
  const double gamma = den.coefficients[0];

  RationalEntryForm form;
  form.i = i;
  form.j = j;
  form.leading = alpha;

  if (std::fabs(alpha) <= 1e-10 * second_minor_scale(a)) {
    // Leading coefficient is zero at scale: det stays linear in x, so
    // the completed-square form collapses.  Keep the numerator root.
    const double s = 1.0 + hs_norm(a);
    const double n0 = det(minor_matrix(with_entry(a, i, j, 0.0).full(), {i}, {j}));
    const double n1 = (det(minor_matrix(with_entry(a, i, j, s).full(), {i}, {j})) - n0) / s;
    form.degenerate = true;
    form.p = n0 / n1;
    form.q = std::numeric_limits<double>::quiet_NaN();
    return form;
  }

  form.p = beta / (2.0 * alpha);
  form.q = gamma / alpha - form.p * form.p;
  return form;
}

double eval_rational_entry(const RationalEntryForm& form, double x) {
  if (form.degenerate)
    throw DomainError("eval_rational_entry: form is degenerate");
  const double shifted = x + form.p;
  return std::fabs(shifted) / std::fabs(shifted * shifted + form.q);
}

double verify_jacobi(const SymMatrix& a, const SymMatrix& e) {
  if (a.n() != e.n()) throw DimensionError("verify_jacobi: dimension mismatch");
  const double analytic = trace(adjugate(a.full()) * e.full());
  const double h = 1e-5 * (1.0 + hs_norm(a));
  const double numeric =
      (det(a.full() + h * e.full()) - det(a.full() + (-h) * e.full())) / (2.0 * h);
  return std::fabs(analytic - numeric) / (1.0 + std::fabs(analytic));
}

AnticoncentrationResult anticoncentration_measure(double s, double eps) {
  if (!(s > 0.0)) throw DomainError("anticoncentration_measure: s must be > 0");
  if (!(eps > 0.0)) throw DomainError("anticoncentration_measure: eps must be > 0");
  const double root = std::sqrt(eps * eps + 4.0 * s);
  AnticoncentrationResult r;
  r.x_hi = 0.5 * (eps + root);
  r.x_lo = 2.0 * s / (eps + root);
  const double len = r.x_hi - r.x_lo;
  r.component_lengths = {len, len};  // the negative component mirrors the positive one
  r.total_measure = len + len;
  return r;
}

TailReport verify_entry_tail_pointwise(const EnsembleSpec& spec, int i, int j,
                                       std::int64_t trials, const std::vector<double>& t_grid,
                                       std::uint64_t master_seed, int workers) {
  spec.validate();
  if (!family_is_continuous(spec.family))
    throw UnsupportedFamilyError(
        "verify_entry_tail_pointwise: entry bound applies to continuous ensembles");
  if (i < 0 || i >= spec.n || j < 0 || j >= spec.n)
    throw IndexError("verify_entry_tail_pointwise: entry index outside the matrix");
  if (trials < 1000) throw DomainError("verify_entry_tail_pointwise: needs at least 1e3 trials");

  const auto records = run_trials(trials, workers, [&](std::uint64_t idx) {
    TrialRecord r;
    r.trial_index = idx;
    const SymMatrix a = sample_matrix(spec, SeedPath{master_seed, idx});
    try {
      r.value = std::fabs(inverse_entry(a, i, j));
    } catch (const SingularMatrixError&) {
      r.excluded = true;
    }
    return r;
  });
  SampleSet samples;
  samples.values.reserve(records.size());
  for (const auto& rec : records) {
    if (rec.excluded)
      ++samples.excluded;
    else
      samples.values.push_back(rec.value);
  }

  std::vector<double> bounds;
  bounds.reserve(t_grid.size());
  for (double t : t_grid) bounds.push_back(2.0 * spec.K / t);
  return make_tail_report(samples, t_grid, t_grid, bounds, "2K/t",
                          /*inclusive=*/false, /*exclusions_expected=*/false);
}

}  // namespace smilab
