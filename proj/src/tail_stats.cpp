#include "smilab/tail_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "smilab/binomial_ci.hpp"
#include "smilab/eigen_sym.hpp"

namespace smilab {

namespace {

constexpr double kExclusionBudget = 1e-3;

double median_sorted(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Gathers included values (in trial order) and the exclusion count.
SampleSet collect(const std::vector<TrialRecord>& records) {
  SampleSet s;
  s.values.reserve(records.size());
  for (const auto& r : records) {
    if (r.excluded)
      ++s.excluded;
    else
      s.values.push_back(r.value);
  }
  return s;
}

}  // namespace

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<TrialRecord> run_trials(std::int64_t trials, int workers,
                                    const std::function<TrialRecord(std::uint64_t)>& fn) {
  if (trials < 1) throw DomainError("run_trials: trials must be >= 1");
  std::vector<TrialRecord> out(static_cast<std::size_t>(trials));
  const int nw = std::min<std::int64_t>(resolve_workers(workers), trials);
  if (nw <= 1) {
    for (std::int64_t i = 0; i < trials; ++i)
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::uint64_t>(i));
    return out;
  }
  // Contiguous slabs; every slot is owned by exactly one thread, and the
  // result depends only on trial indices, never on the schedule.
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nw));
  const std::int64_t chunk = (trials + nw - 1) / nw;
  std::exception_ptr first_error;
  std::mutex err_mu;
  for (int w = 0; w < nw; ++w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min(trials, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::int64_t i = lo; i < hi; ++i)
          out[static_cast<std::size_t>(i)] = fn(static_cast<std::uint64_t>(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

double weak_lp_norm(const SampleSet& samples, double p) {
  if (!(p > 0.0)) throw DomainError("weak_lp_norm: p must be > 0");
  const std::int64_t n = samples.count();
  if (n < 100) throw DomainError("weak_lp_norm: needs at least 100 samples");
  std::vector<double> v = samples.values;
  std::sort(v.begin(), v.end());
  const double nd = static_cast<double>(n);
  double best = 0.0;
  for (std::int64_t k = 0; k < n; ++k) {
    const double ratio = static_cast<double>(n - k) / nd;
    const double weight = (p == 1.0) ? ratio : std::pow(ratio, 1.0 / p);
    best = std::max(best, v[static_cast<std::size_t>(k)] * weight);
  }
  return best;
}

TailEstimate empirical_tail(const SampleSet& samples, double t) {
  const std::int64_t n = samples.count();
  if (n < 1) throw DomainError("empirical_tail: empty sample set");
  std::int64_t x = 0;
  for (double v : samples.values)
    if (v > t) ++x;
  TailEstimate e;
  e.estimate = static_cast<double>(x) / static_cast<double>(n);
  e.ci_lower = clopper_pearson_lower(x, n, kTailAlpha);
  e.ci_upper = clopper_pearson_upper(x, n, kTailAlpha);
  return e;
}

TailReport make_tail_report(const SampleSet& samples, const std::vector<double>& t_grid,
                            const std::vector<double>& thresholds,
                            const std::vector<double>& bounds, const std::string& bound_name,
                            bool inclusive, bool exclusions_expected) {
  if (t_grid.size() != thresholds.size() || t_grid.size() != bounds.size())
    throw DimensionError("make_tail_report: grid/threshold/bound sizes differ");
  const std::int64_t n = samples.count();
  if (n < 1) throw DomainError("make_tail_report: empty sample set");

  TailReport rep;
  rep.bound_name = bound_name;
  rep.t_grid = t_grid;
  rep.threshold = thresholds;
  rep.trials = n;
  rep.excluded = samples.excluded;
  const double total = static_cast<double>(n + samples.excluded);
  rep.exclusion_ok =
      exclusions_expected || static_cast<double>(samples.excluded) < kExclusionBudget * total;

  rep.passed = true;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    std::int64_t x = 0;
    for (double v : samples.values) {
      const bool hit = inclusive ? v >= thresholds[i] : v > thresholds[i];
      if (hit) ++x;
    }
    rep.exceed_count.push_back(x);
    rep.empirical.push_back(static_cast<double>(x) / static_cast<double>(n));
    rep.ci_lower.push_back(clopper_pearson_lower(x, n, kTailAlpha));
    rep.ci_upper.push_back(clopper_pearson_upper(x, n, kTailAlpha));
    rep.bound.push_back(bounds[i]);
    const double capped = std::min(bounds[i], 1.0);
    rep.capped_bound.push_back(capped);
    const bool ok = rep.ci_lower.back() <= capped;
    rep.pass.push_back(ok);
    rep.passed = rep.passed && ok;
  }
  rep.passed = rep.passed && rep.exclusion_ok;
  return rep;
}

TheoremRunData run_theorem_trials(const EnsembleSpec& spec, std::int64_t trials,
                                  std::uint64_t master_seed, int workers, bool record_hs) {
  spec.validate();
  if (!family_is_continuous(spec.family))
    throw UnsupportedFamilyError(
        "run_theorem_trials: bound applies to continuous symmetric ensembles");
  const auto records = run_trials(trials, workers, [&](std::uint64_t idx) {
    TrialRecord r;
    r.trial_index = idx;
    const SymMatrix a = sample_matrix(spec, SeedPath{master_seed, idx});
    try {
      r.value = inverse_op_norm(a);
      if (record_hs) r.aux = hs_norm(inverse(a));
    } catch (const SingularMatrixError&) {
      r.excluded = true;
    }
    return r;
  });
  TheoremRunData data;
  data.op_norms = collect(records);
  if (record_hs) {
    data.hs_norms.excluded = data.op_norms.excluded;
    data.hs_norms.values.reserve(data.op_norms.values.size());
    for (const auto& r : records)
      if (!r.excluded) data.hs_norms.values.push_back(r.aux);
  }
  return data;
}

TailReport check_theorem_bound(const EnsembleSpec& spec, std::int64_t trials,
                               const std::vector<double>& t_grid, std::uint64_t master_seed,
                               int workers) {
  if (trials < 1000) throw DomainError("check_theorem_bound: needs at least 1e3 trials");
  const TheoremRunData data = run_theorem_trials(spec, trials, master_seed, workers, false);
  const double n2 = static_cast<double>(spec.n) * static_cast<double>(spec.n);
  std::vector<double> thresholds, bounds;
  for (double t : t_grid) {
    thresholds.push_back(n2 * t);
    bounds.push_back(8.0 * spec.K / t);
  }
  return make_tail_report(data.op_norms, t_grid, thresholds, bounds, "8K/t",
                          /*inclusive=*/true, /*exclusions_expected=*/false);
}

TailReport check_sst_bound(int n, const ShiftSpec& shift, std::int64_t trials,
                           const std::vector<double>& t_grid, std::uint64_t master_seed,
                           int workers) {
  if (n < 1) throw ConfigError("check_sst_bound: n must be >= 1");
  if (trials < 1000) throw DomainError("check_sst_bound: needs at least 1e3 trials");
  const Matrix d_full = shift_matrix(shift, n).full();
  const auto records = run_trials(trials, workers, [&](std::uint64_t idx) {
    TrialRecord r;
    r.trial_index = idx;
    const Matrix m = d_full + sample_ginibre(n, SeedPath{master_seed, idx});
    // sigma_min via the spectrum of M^T M.
    const Spectrum s = sym_eigenvalues(gram(m));
    const double lo = s.eigenvalues.front();
    const double hi = s.eigenvalues.back();
    if (lo <= 1e3 * std::numeric_limits<double>::epsilon() * std::fabs(hi) || lo <= 0.0) {
      r.excluded = true;
      return r;
    }
    r.value = 1.0 / std::sqrt(lo);
    return r;
  });
  const SampleSet samples = collect(records);
  const double sqn = std::sqrt(static_cast<double>(n));
  std::vector<double> thresholds, bounds;
  for (double t : t_grid) {
    thresholds.push_back(t * sqn);
    bounds.push_back(2.35 / t);
  }
  return make_tail_report(samples, t_grid, thresholds, bounds, "2.35/t",
                          /*inclusive=*/true, /*exclusions_expected=*/false);
}

HagelsteinReport check_hagelstein(int components, std::int64_t trials,
                                  std::uint64_t master_seed, int workers) {
  if (components < 1) throw DomainError("check_hagelstein: components must be >= 1");
  if (trials < 100) throw DomainError("check_hagelstein: needs at least 100 trials");
  const std::size_t m = static_cast<std::size_t>(components);
  const std::size_t nt = static_cast<std::size_t>(trials);

  // Per-component |X_c| samples, component-major, plus aggregated rows.
  std::vector<double> comp(m * nt);
  std::vector<double> agg(nt);
  const auto fill = [&](std::uint64_t idx) {
    TrialRecord r;
    r.trial_index = idx;
    TrialRng rng(SeedPath{master_seed, idx});
    double sq = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      const double x = rng.cauchy(1.0);
      comp[c * nt + static_cast<std::size_t>(idx)] = std::fabs(x);
      sq += x * x;
    }
    agg[static_cast<std::size_t>(idx)] = std::sqrt(sq);
    return r;
  };
  run_trials(trials, workers, fill);

  HagelsteinReport rep;
  rep.components = components;
  rep.trials = trials;
  rep.left = weak_lp_norm(SampleSet{agg, 0}, 1.0);
  double sum = 0.0;
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<double> one(comp.begin() + static_cast<std::ptrdiff_t>(c * nt),
                            comp.begin() + static_cast<std::ptrdiff_t>((c + 1) * nt));
    sum += weak_lp_norm(SampleSet{std::move(one), 0}, 1.0);
  }
  rep.per_component_sum = sum;
  rep.right = 4.0 * sum;
  rep.ratio = rep.left / rep.right;
  rep.passed = rep.left <= rep.right * 1.05;
  return rep;
}

CounterexampleReport counterexample_growth(int n, const std::vector<double>& d_list,
                                           std::int64_t trials, std::uint64_t master_seed,
                                           int workers) {
  if (n < 2) throw ConfigError("counterexample_growth: n must be >= 2");
  if (trials < 100) throw DomainError("counterexample_growth: needs at least 100 trials");
  if (d_list.size() < 3) throw ConfigError("counterexample_growth: d_list needs >= 3 values");
  for (std::size_t i = 0; i < d_list.size(); ++i) {
    if (!(d_list[i] > 0.0)) throw ConfigError("counterexample_growth: d values must be > 0");
    if (i > 0 && d_list[i] <= d_list[i - 1])
      throw ConfigError("counterexample_growth: d_list must be strictly ascending");
  }
  if (d_list.back() < 100.0 * d_list.front())
    throw ConfigError("counterexample_growth: d_list must span at least two decades");

  const double sqn = std::sqrt(static_cast<double>(n));
  CounterexampleReport rep;
  rep.n = n;
  rep.d_list = d_list;

  std::vector<std::vector<double>> norms(d_list.size());
  for (std::size_t di = 0; di < d_list.size(); ++di) {
    EnsembleSpec spec;
    spec.family = Family::LazyRademacher;
    spec.n = n;
    spec.shift = ShiftSpec::counterexample_diag(d_list[di]);
    // Global trial index keeps streams distinct across the d cells.
    const std::uint64_t base = static_cast<std::uint64_t>(di) * static_cast<std::uint64_t>(trials);
    const auto records = run_trials(trials, workers, [&](std::uint64_t idx) {
      TrialRecord r;
      r.trial_index = idx;
      const SymMatrix a = sample_matrix(spec, SeedPath{master_seed, base + idx});
      try {
        r.value = inverse_op_norm(a);
      } catch (const SingularMatrixError&) {
        r.excluded = true;
      }
      return r;
    });
    SampleSet s = collect(records);
    rep.excluded += s.excluded;
    rep.trials.push_back(s.count());
    std::sort(s.values.begin(), s.values.end());
    const double med = median_sorted(s.values);
    rep.median_norm.push_back(med);
    rep.scaled_median.push_back(med * sqn / d_list[di]);
    norms[di] = std::move(s.values);
  }

  rep.c0 = rep.scaled_median.front() / 2.0;
  double band_lo = rep.scaled_median.front(), band_hi = band_lo;
  for (double m : rep.scaled_median) {
    band_lo = std::min(band_lo, m);
    band_hi = std::max(band_hi, m);
  }
  rep.band_ratio = band_lo > 0.0 ? band_hi / band_lo : std::numeric_limits<double>::infinity();
  const bool band_ok = rep.band_ratio <= 3.0;

  rep.passed = band_ok;
  for (std::size_t di = 0; di < d_list.size(); ++di) {
    const double cutoff = rep.c0 * d_list[di] / sqn;
    std::int64_t x = 0;
    for (double v : norms[di])
      if (v >= cutoff) ++x;
    const double frac =
        rep.trials[di] > 0 ? static_cast<double>(x) / static_cast<double>(rep.trials[di]) : 0.0;
    rep.exceed_fraction.push_back(frac);
    const bool exceed_ok = frac >= 0.4;
    rep.pass.push_back(exceed_ok && band_ok);
    rep.passed = rep.passed && exceed_ok;
  }
  return rep;
}

GinibreLowerReport check_ginibre_lower(int n, std::int64_t trials, std::uint64_t master_seed,
                                       int workers) {
  if (n < 1) throw ConfigError("check_ginibre_lower: n must be >= 1");
  if (trials < 100) throw DomainError("check_ginibre_lower: needs at least 100 trials");
  const auto records = run_trials(trials, workers, [&](std::uint64_t idx) {
    TrialRecord r;
    r.trial_index = idx;
    const Matrix g = sample_ginibre(n, SeedPath{master_seed, idx});
    const Spectrum s = sym_eigenvalues(gram(g));
    const double lo = s.eigenvalues.front();
    const double hi = s.eigenvalues.back();
    if (lo <= 1e3 * std::numeric_limits<double>::epsilon() * std::fabs(hi) || lo <= 0.0) {
      r.excluded = true;
      return r;
    }
    r.value = 1.0 / std::sqrt(lo);
    return r;
  });
  const SampleSet s = collect(records);
  GinibreLowerReport rep;
  rep.n = n;
  rep.trials = s.count();
  rep.excluded = s.excluded;
  rep.threshold = 0.1 * std::sqrt(static_cast<double>(n));
  std::int64_t x = 0;
  for (double v : s.values)
    if (v >= rep.threshold) ++x;
  rep.fraction = rep.trials > 0 ? static_cast<double>(x) / static_cast<double>(rep.trials) : 0.0;
  rep.passed = rep.fraction >= 0.9;
  return rep;
}

}  // namespace smilab
