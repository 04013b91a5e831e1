#ifndef SMILAB_ENSEMBLES_HPP
#define SMILAB_ENSEMBLES_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "smilab/matrix.hpp"
#include "smilab/rng.hpp"

namespace smilab {

// Entry distributions.  The three continuous families are normalized so
// the entry density is bounded by K:
//   BoundedUniform  uniform on [-1/(2K), 1/(2K)]
//   BoundedGaussian sd = 1/(K sqrt(2 pi))
//   Cauchy          scale = 1/(pi K)
// Ginibre is i.i.d. standard normal over the full square matrix with no
// symmetrization; LazyRademacher takes +-1 w.p. 1/4 each and 0 w.p. 1/2.
enum class Family {
  BoundedUniform,
  BoundedGaussian,
  Cauchy,
  Ginibre,
  LazyRademacher,
};

bool family_is_continuous(Family f);
std::string family_name(Family f);

// Deterministic shift D added to the random part.
struct ShiftSpec {
  enum class Kind { Zero, ScalarIdentity, CounterexampleDiag, ExplicitSymmetric };

  Kind kind = Kind::Zero;
  double c = 0.0;                      // ScalarIdentity: D = c I
  double d = 0.0;                      // CounterexampleDiag: D = diag(0, d, ..., d)
  std::optional<SymMatrix> matrix;     // ExplicitSymmetric

  static ShiftSpec zero() { return {}; }
  static ShiftSpec scalar_identity(double c);
  static ShiftSpec counterexample_diag(double d);
  static ShiftSpec explicit_symmetric(SymMatrix m);

  bool operator==(const ShiftSpec& o) const = default;
};

// Full description of one matrix ensemble.
struct EnsembleSpec {
  Family family = Family::BoundedUniform;
  double K = 1.0;  // density bound; meaningful for continuous families only
  int n = 1;
  ShiftSpec shift;

  // Throws ConfigError on inconsistent parameters (n < 1, K <= 0 for a
  // continuous family, explicit shift of the wrong order, d < 0).
  void validate() const;

  bool operator==(const EnsembleSpec& o) const = default;
};

// Materializes the shift as an n x n symmetric matrix.
SymMatrix shift_matrix(const ShiftSpec& shift, int n);

// One draw from a symmetric ensemble: independent entries on the upper
// triangle including the diagonal (row-major order), mirrored exactly,
// plus the shift.  Ginibre is not symmetric and is rejected here with
// ConfigError; use sample_ginibre.
SymMatrix sample_matrix(const EnsembleSpec& spec, SeedPath path);

// One draw of an n x n matrix with i.i.d. standard normal entries
// (row-major order), no symmetrization, no shift.
Matrix sample_ginibre(int n, SeedPath path);

// One scalar draw from the entry distribution of a continuous family.
double sample_entry(Family family, double K, TrialRng& rng);

struct DensityReport {
  std::int64_t samples = 0;
  double bin_width = 0.0;
  int bins = 0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double max_density = 0.0;
  double threshold = 0.0;  // K * 1.05
  bool passed = false;
};

// Histogram check that the scalar entry density never exceeds K by more
// than 5%.  Bin width is IQR * samples^(-1/3); the histogram covers
// [Q1 - 3 IQR, Q3 + 3 IQR], which contains the mode of every supported
// (unimodal, centered) family, so the density maximum is inside it.
// Requires a continuous family and samples >= 1e5.
DensityReport density_bound_check(const EnsembleSpec& spec, std::int64_t samples,
                                  SeedPath path);

}  // namespace smilab

#endif
