#include "smilab/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace smilab {

namespace {

// Linear-interpolation quantile on a sorted vector, q in [0, 1].
double quantile_sorted(const std::vector<double>& v, double q) {
  const std::size_t n = v.size();
  const double pos = q * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, n - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

}  // namespace

bool family_is_continuous(Family f) {
  return f == Family::BoundedUniform || f == Family::BoundedGaussian || f == Family::Cauchy;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::BoundedUniform: return "bounded_uniform";
    case Family::BoundedGaussian: return "bounded_gaussian";
    case Family::Cauchy: return "cauchy";
    case Family::Ginibre: return "ginibre";
    case Family::LazyRademacher: return "lazy_rademacher";
  }
  return "unknown";
}

ShiftSpec ShiftSpec::scalar_identity(double c) {
  ShiftSpec s;
  s.kind = Kind::ScalarIdentity;
  s.c = c;
  return s;
}

ShiftSpec ShiftSpec::counterexample_diag(double d) {
  ShiftSpec s;
  s.kind = Kind::CounterexampleDiag;
  s.d = d;
  return s;
}

ShiftSpec ShiftSpec::explicit_symmetric(SymMatrix m) {
  ShiftSpec s;
  s.kind = Kind::ExplicitSymmetric;
  s.matrix = std::move(m);
  return s;
}

void EnsembleSpec::validate() const {
  if (n < 1) throw ConfigError("ensemble: n must be >= 1");
  if (family_is_continuous(family) && !(K > 0.0))
    throw ConfigError("ensemble: K must be > 0 for a continuous family");
  if (shift.kind == ShiftSpec::Kind::CounterexampleDiag && shift.d < 0.0)
    throw ConfigError("ensemble: counterexample shift level d must be >= 0");
  if (shift.kind == ShiftSpec::Kind::ExplicitSymmetric) {
    if (!shift.matrix) throw ConfigError("ensemble: explicit shift matrix missing");
    if (shift.matrix->n() != n)
      throw ConfigError("ensemble: explicit shift order " + std::to_string(shift.matrix->n()) +
                        " does not match n = " + std::to_string(n));
  }
}

SymMatrix shift_matrix(const ShiftSpec& shift, int n) {
  if (n < 1) throw ConfigError("shift_matrix: n must be >= 1");
  switch (shift.kind) {
    case ShiftSpec::Kind::Zero:
      return SymMatrix(n);
    case ShiftSpec::Kind::ScalarIdentity: {
      SymMatrix m(n);
      for (int i = 0; i < n; ++i) m.set(i, i, shift.c);
      return m;
    }
    case ShiftSpec::Kind::CounterexampleDiag: {
      // diag(0, d, ..., d): the first diagonal entry stays unshifted.
      SymMatrix m(n);
      for (int i = 1; i < n; ++i) m.set(i, i, shift.d);
      return m;
    }
    case ShiftSpec::Kind::ExplicitSymmetric: {
      if (!shift.matrix) throw ConfigError("shift_matrix: explicit shift matrix missing");
      if (shift.matrix->n() != n)
        throw ConfigError("shift_matrix: explicit shift order mismatch");
      return *shift.matrix;
    }
  }
  throw ConfigError("shift_matrix: unknown shift kind");
}

double sample_entry(Family family, double K, TrialRng& rng) {
  switch (family) {
    case Family::BoundedUniform:
      return rng.uniform_sym(1.0 / (2.0 * K));
    case Family::BoundedGaussian:
      return rng.normal(1.0 / (K * std::sqrt(2.0 * std::numbers::pi)));
    case Family::Cauchy:
      return rng.cauchy(1.0 / (std::numbers::pi * K));
    case Family::LazyRademacher:
      return static_cast<double>(rng.lazy_sign());
    case Family::Ginibre:
      break;
  }
  throw UnsupportedFamilyError("sample_entry: family has no scalar entry distribution");
}

SymMatrix sample_matrix(const EnsembleSpec& spec, SeedPath path) {
  spec.validate();
  if (spec.family == Family::Ginibre)
    throw ConfigError("sample_matrix: ginibre is not a symmetric ensemble; use sample_ginibre");
  TrialRng rng(path);
  const SymMatrix d = shift_matrix(spec.shift, spec.n);
  SymMatrix m(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    for (int j = i; j < spec.n; ++j) {
      m.set(i, j, sample_entry(spec.family, spec.K, rng) + d(i, j));
    }
  }
  return m;
}

Matrix sample_ginibre(int n, SeedPath path) {
  if (n < 1) throw ConfigError("sample_ginibre: n must be >= 1");
  TrialRng rng(path);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.normal(1.0);
  return m;
}

DensityReport density_bound_check(const EnsembleSpec& spec, std::int64_t samples,
                                  SeedPath path) {
  spec.validate();
  if (!family_is_continuous(spec.family))
    throw UnsupportedFamilyError("density_bound_check: requires a continuous family");
  if (samples < 100000)
    throw DomainError("density_bound_check: needs at least 1e5 samples");

  TrialRng rng(path);
  std::vector<double> v(static_cast<std::size_t>(samples));
  for (auto& x : v) x = sample_entry(spec.family, spec.K, rng);

  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  const double q1 = quantile_sorted(sorted, 0.25);
  const double q3 = quantile_sorted(sorted, 0.75);
  const double iqr = q3 - q1;

  DensityReport rep;
  rep.samples = samples;
  rep.bin_width = iqr * std::pow(static_cast<double>(samples), -1.0 / 3.0);
  rep.window_lo = q1 - 3.0 * iqr;
  rep.window_hi = q3 + 3.0 * iqr;
  rep.threshold = spec.K * 1.05;
  if (!(rep.bin_width > 0.0)) throw DomainError("density_bound_check: degenerate IQR");

  const int bins =
      static_cast<int>(std::ceil((rep.window_hi - rep.window_lo) / rep.bin_width));
  rep.bins = std::max(bins, 1);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(rep.bins), 0);
  for (double x : v) {
    if (x < rep.window_lo || x > rep.window_hi) continue;  // tails of a unimodal law
    int b = static_cast<int>((x - rep.window_lo) / rep.bin_width);
    b = std::min(b, rep.bins - 1);
    ++counts[static_cast<std::size_t>(b)];
  }
  const std::int64_t peak = *std::max_element(counts.begin(), counts.end());
  rep.max_density =
      static_cast<double>(peak) / (static_cast<double>(samples) * rep.bin_width);
  rep.passed = rep.max_density <= rep.threshold;
  return rep;
}

}  // namespace smilab
