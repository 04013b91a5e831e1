#ifndef SMILAB_TAIL_STATS_HPP
#define SMILAB_TAIL_STATS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smilab/ensembles.hpp"

namespace smilab {

// Confidence level used for every binomial tail interval: each side is a
// one-sided exact bound at alpha = 1e-3.
inline constexpr double kTailAlpha = 1e-3;

// Nonnegative Monte Carlo samples plus the count of draws that were
// excluded (singular at working precision) before entering the set.
struct SampleSet {
  std::vector<double> values;
  std::int64_t excluded = 0;

  std::int64_t count() const { return static_cast<std::int64_t>(values.size()); }

  bool operator==(const SampleSet& o) const = default;
};

// One Monte Carlo draw's outputs.
struct TrialRecord {
  std::uint64_t trial_index = 0;
  double value = 0.0;      // statistic under study
  double aux = 0.0;        // optional second statistic (e.g. HS norm)
  bool excluded = false;
};

// Weak-Lp norm estimate: with samples sorted ascending and 0-based rank
// k, the supremum of the plug-in functional is
//   max_k v_(k) * ((count - k) / count)^(1/p),
// attained as t approaches each sample from the left.  Exact on constant
// samples; scale-equivariant.  Requires count >= 100.
double weak_lp_norm(const SampleSet& samples, double p);

struct TailEstimate {
  double estimate = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
};

// Fraction of samples strictly above t with exact one-sided binomial
// bounds at level kTailAlpha per side.
TailEstimate empirical_tail(const SampleSet& samples, double t);

// One verified tail curve: for each t, the empirical probability that
// the statistic reached threshold(t), against a theoretical bound.
// passed requires ci_lower <= min(bound, 1) at every t, plus the
// exclusion budget (excluded < 0.1% of draws) when exclusions are not
// expected for the ensemble.
struct TailReport {
  std::string bound_name;
  std::vector<double> t_grid;
  std::vector<double> threshold;
  std::vector<std::int64_t> exceed_count;
  std::int64_t trials = 0;  // included draws
  std::vector<double> empirical;
  std::vector<double> ci_lower;
  std::vector<double> ci_upper;
  std::vector<double> bound;
  std::vector<double> capped_bound;
  std::vector<bool> pass;
  std::int64_t excluded = 0;
  bool exclusion_ok = true;
  bool passed = false;

  bool operator==(const TailReport& o) const = default;
};

// Builds a tail report from per-trial values of a statistic.
// thresholds[i] pairs with t_grid[i]; an event is value >= threshold
// when inclusive is true, value > threshold otherwise.
TailReport make_tail_report(const SampleSet& samples, const std::vector<double>& t_grid,
                            const std::vector<double>& thresholds,
                            const std::vector<double>& bounds, const std::string& bound_name,
                            bool inclusive, bool exclusions_expected);

// Deterministic parallel trial map: evaluates fn(trial_index) for
// trial_index in [0, trials) on `workers` threads (0 = hardware
// concurrency) and returns results in index order.  fn must depend only
// on the trial index, so the result is independent of scheduling.
std::vector<TrialRecord> run_trials(
    std::int64_t trials, int workers,
    const std::function<TrialRecord(std::uint64_t)>& fn);

int resolve_workers(int workers);

// Tail of ||A^{-1}|| for a continuous symmetric ensemble with arbitrary
// shift: thresholds n^2 t, bound 8K/t.  record_hs additionally captures
// the HS norm of the explicit inverse in each record (slower).
struct TheoremRunData {
  SampleSet op_norms;
  SampleSet hs_norms;  // empty unless requested
};
TheoremRunData run_theorem_trials(const EnsembleSpec& spec, std::int64_t trials,
                                  std::uint64_t master_seed, int workers, bool record_hs);
TailReport check_theorem_bound(const EnsembleSpec& spec, std::int64_t trials,
                               const std::vector<double>& t_grid, std::uint64_t master_seed,
                               int workers);

// Tail of ||(D + G)^{-1}|| for Ginibre G and symmetric shift D:
// thresholds t sqrt(n), bound 2.35/t.  The smallest singular value
// comes from the eigenvalues of M^T M.
TailReport check_sst_bound(int n, const ShiftSpec& shift, std::int64_t trials,
                           const std::vector<double>& t_grid, std::uint64_t master_seed,
                           int workers);

// Square-function inequality for m independent standard Cauchy
// components: weak-L1 of sqrt(sum X_i^2) against 4 * sum of the
// per-component weak-L1 estimates, with 5% estimator slack.
struct HagelsteinReport {
  int components = 0;
  std::int64_t trials = 0;
  double left = 0.0;
  double per_component_sum = 0.0;
  double right = 0.0;  // 4 * per_component_sum
  double ratio = 0.0;
  bool passed = false;

  bool operator==(const HagelsteinReport& o) const = default;
};
HagelsteinReport check_hagelstein(int components, std::int64_t trials,
                                  std::uint64_t master_seed, int workers);

// Growth of ||(D + R)^{-1}|| for lazy Rademacher R and
// D = diag(0, d, ..., d): the scaled median m(d) = median * sqrt(n) / d
// must stay within a factor-3 band across d_list, and with
// c0 = m(d_min)/2 the exceedance fraction
// P{norm >= c0 d / sqrt(n)} must stay >= 0.4 at every d.
// Singular draws are excluded and counted.
struct CounterexampleReport {
  int n = 0;
  std::vector<double> d_list;
  std::vector<std::int64_t> trials;  // included per d
  std::vector<double> median_norm;
  std::vector<double> scaled_median;
  std::vector<double> exceed_fraction;
  std::vector<bool> pass;  // per-d: exceedance ok and global band ok
  double c0 = 0.0;
  double band_ratio = 0.0;
  std::int64_t excluded = 0;
  bool passed = false;

  bool operator==(const CounterexampleReport& o) const = default;
};
CounterexampleReport counterexample_growth(int n, const std::vector<double>& d_list,
                                           std::int64_t trials, std::uint64_t master_seed,
                                           int workers);

// Sharpness floor for the unshifted Ginibre ensemble:
// P{||G^{-1}|| >= 0.1 sqrt(n)} must be at least 0.9.
struct GinibreLowerReport {
  int n = 0;
  std::int64_t trials = 0;
  double threshold = 0.0;  // 0.1 sqrt(n)
  double fraction = 0.0;
  std::int64_t excluded = 0;
  bool passed = false;

  bool operator==(const GinibreLowerReport& o) const = default;
};
GinibreLowerReport check_ginibre_lower(int n, std::int64_t trials, std::uint64_t master_seed,
                                       int workers);

}  // namespace smilab

#endif
