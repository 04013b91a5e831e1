#include "smilab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "smilab/identities.hpp"

namespace smilab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open \"" + path + "\" for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed while writing \"" + path + "\"");
}

ordered_json tail_payload(const TailReport& r) {
  ordered_json p;
  p["bound_name"] = r.bound_name;
  p["trials"] = r.trials;
  p["excluded"] = r.excluded;
  p["exclusion_ok"] = r.exclusion_ok;
  p["t"] = r.t_grid;
  p["threshold"] = r.threshold;
  p["exceed_count"] = r.exceed_count;
  p["empirical"] = r.empirical;
  p["ci_lower"] = r.ci_lower;
  p["ci_upper"] = r.ci_upper;
  p["bound"] = r.bound;
  p["capped_bound"] = r.capped_bound;
  p["pass"] = r.pass;
  p["passed"] = r.passed;
  return p;
}

std::string tail_csv(const TailReport& r) {
  std::string out =
      "t,threshold,exceed_count,trials,empirical,ci_lower,ci_upper,bound,capped_bound,pass\n";
  for (std::size_t i = 0; i < r.t_grid.size(); ++i) {
    out += fmt17(r.t_grid[i]);
    out += ',';
    out += fmt17(r.threshold[i]);
    out += ',';
    out += std::to_string(r.exceed_count[i]);
    out += ',';
    out += std::to_string(r.trials);
    out += ',';
    out += fmt17(r.empirical[i]);
    out += ',';
    out += fmt17(r.ci_lower[i]);
    out += ',';
    out += fmt17(r.ci_upper[i]);
    out += ',';
    out += fmt17(r.bound[i]);
    out += ',';
    out += fmt17(r.capped_bound[i]);
    out += ',';
    out += r.pass[i] ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::string counterexample_csv(const CounterexampleReport& r) {
  std::string out = "d,trials,median_norm,scaled_median,exceed_fraction,pass\n";
  for (std::size_t i = 0; i < r.d_list.size(); ++i) {
    out += fmt17(r.d_list[i]);
    out += ',';
    out += std::to_string(r.trials[i]);
    out += ',';
    out += fmt17(r.median_norm[i]);
    out += ',';
    out += fmt17(r.scaled_median[i]);
    out += ',';
    out += fmt17(r.exceed_fraction[i]);
    out += ',';
    out += r.pass[i] ? "true" : "false";
    out += '\n';
  }
  return out;
}

SymMatrix random_sym(TrialRng& rng, int n) {
  SymMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a.set(i, j, rng.uniform_sym(1.0));
  return a;
}

double rel_diff(double a, double b) {
  return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300});
}

// One pass over `cases` seeded matrices checking every deterministic
// identity the library asserts: polynomial entry dependence, the
// Cramer cofactor form, the determinant derivative, the rational entry
// form, and the sublevel-set geometry.  The maxima let a reader see the
// margin, not just the verdict.
ordered_json run_identity_suite(const ExperimentConfig& cfg) {
  constexpr double kFitTol = 1e-9;
  constexpr double kDiagQuadTol = 1e-10;
  constexpr double kCramerTol = 1e-8;
  constexpr double kJacobiTol = 1e-5;
  constexpr double kRationalTol = 1e-8;

  double max_offdiag_fit = 0.0, max_diag_fit = 0.0, max_diag_quad = 0.0;
  double max_cramer = 0.0, max_jacobi = 0.0, max_rational = 0.0;
  std::int64_t excluded = 0, degenerate_forms = 0;

  for (int k = 0; k < cfg.cases; ++k) {
    TrialRng rng(SeedPath{cfg.master_seed, static_cast<std::uint64_t>(k)});
    const int n = 2 + static_cast<int>(rng.next_u64() % static_cast<unsigned>(cfg.n_max - 1));
    const SymMatrix a = random_sym(rng, n);
    const int diag_i = static_cast<int>(rng.next_u64() % static_cast<unsigned>(n));
    const int off_i = static_cast<int>(rng.next_u64() % static_cast<unsigned>(n));
    int off_j = static_cast<int>(rng.next_u64() % static_cast<unsigned>(n - 1));
    if (off_j >= off_i) ++off_j;

    const PolyFit offd = fit_entry_dependence(a, off_i, off_j);
    max_offdiag_fit = std::max(max_offdiag_fit, offd.residual / std::max(offd.scale, 1e-300));
    const PolyFit diag = fit_entry_dependence(a, diag_i, diag_i);
    max_diag_fit = std::max(max_diag_fit, diag.residual / std::max(diag.scale, 1e-300));
    max_diag_quad = std::max(
        max_diag_quad, std::fabs(diag.coefficients[2]) / std::max(diag.scale, 1e-300));

    Matrix inv;
    try {
      inv = inverse(a);
    } catch (const SingularMatrixError&) {
      ++excluded;
      continue;
    }
    const double da = std::fabs(det(a));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double lhs = std::fabs(inv(i, j)) * da;
        const double rhs = std::fabs(det(minor_matrix(a.full(), {i}, {j})));
        max_cramer = std::max(max_cramer, rel_diff(lhs, rhs));
      }

    const SymMatrix e = random_sym(rng, n);
    max_jacobi = std::max(max_jacobi, verify_jacobi(a, e));

    const RationalEntryForm form = fit_rational_entry_form(a, off_i, off_j);
    if (form.degenerate) {
      ++degenerate_forms;
    } else {
      const double s = 1.0 + hs_norm(a);
      for (int probe = 0; probe < 20; ++probe) {
        const double x = rng.uniform_sym(2.0 * s);
        SymMatrix b = a;
        b.set(off_i, off_j, x);
        double actual;
        try {
          actual = std::fabs(inverse_entry(b, off_i, off_j));
        } catch (const SingularMatrixError&) {
          continue;  // the identity is only claimed where A(x) is nonsingular
        }
        max_rational = std::max(max_rational, rel_diff(actual, eval_rational_entry(form, x)));
      }
    }
  }

  double anti_max_ratio = 0.0;
  for (double s : {1e-4, 1.0, 1e4})
    for (double eps : {1e-6, 1e-3, 0.1}) {
      const AnticoncentrationResult r = anticoncentration_measure(s, eps);
      for (double len : r.component_lengths)
        anti_max_ratio = std::max(anti_max_ratio, len / (2.0 * eps));
    }

  const bool passed = max_offdiag_fit < kFitTol && max_diag_fit < kFitTol &&
                      max_diag_quad < kDiagQuadTol && max_cramer < kCramerTol &&
                      max_jacobi < kJacobiTol && max_rational < kRationalTol &&
                      anti_max_ratio < 1.0 &&
                      excluded * 1000 < cfg.cases;

  ordered_json p;
  p["cases"] = cfg.cases;
  p["n_max"] = cfg.n_max;
  p["excluded"] = excluded;
  p["degenerate_forms"] = degenerate_forms;
  p["max_offdiag_fit_residual"] = max_offdiag_fit;
  p["max_diag_fit_residual"] = max_diag_fit;
  p["max_diag_quadratic_coeff"] = max_diag_quad;
  p["max_cramer_residual"] = max_cramer;
  p["max_jacobi_residual"] = max_jacobi;
  p["max_rational_residual"] = max_rational;
  p["anticoncentration_max_ratio"] = anti_max_ratio;
  ordered_json tol;
  tol["fit_residual"] = kFitTol;
  tol["diag_quadratic_coeff"] = kDiagQuadTol;
  tol["cramer_residual"] = kCramerTol;
  tol["jacobi_residual"] = kJacobiTol;
  tol["rational_residual"] = kRationalTol;
  tol["anticoncentration_ratio"] = 1.0;
  p["tolerances"] = std::move(tol);
  p["passed"] = passed;
  return p;
}

ordered_json counterexample_payload(const CounterexampleReport& r) {
  ordered_json p;
  p["n"] = r.n;
  p["d_list"] = r.d_list;
  p["trials"] = r.trials;
  p["median_norm"] = r.median_norm;
  p["scaled_median"] = r.scaled_median;
  p["exceed_fraction"] = r.exceed_fraction;
  p["pass"] = r.pass;
  p["c0"] = r.c0;
  p["band_ratio"] = r.band_ratio;
  p["excluded"] = r.excluded;
  p["passed"] = r.passed;
  return p;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::ReportOnly: return "REPORT_ONLY";
  }
  return "unknown";
}

int verdict_exit_code(Verdict v) { return v == Verdict::Fail ? 1 : 0; }

RunReport run(const ExperimentConfig& cfg) {
  RunReport rep;
  rep.config = cfg;
  const auto start = std::chrono::steady_clock::now();

  switch (cfg.experiment) {
    case Experiment::TheoremTail: {
      const TailReport r =
          check_theorem_bound(*cfg.ensemble, cfg.trials, cfg.t_grid, cfg.master_seed, cfg.workers);
      rep.payload = tail_payload(r);
      rep.excluded_draws = r.excluded;
      rep.verdict = r.passed ? Verdict::Pass : Verdict::Fail;
      break;
    }
    case Experiment::SstTail: {
      const TailReport r = check_sst_bound(cfg.ensemble->n, cfg.ensemble->shift, cfg.trials,
                                           cfg.t_grid, cfg.master_seed, cfg.workers);
      rep.payload = tail_payload(r);
      rep.excluded_draws = r.excluded;
      rep.verdict = r.passed ? Verdict::Pass : Verdict::Fail;
      break;
    }
    case Experiment::EntryTail: {
      const TailReport r = verify_entry_tail_pointwise(
          *cfg.ensemble, cfg.entry_i, cfg.entry_j, cfg.trials, cfg.t_grid, cfg.master_seed,
          cfg.workers);
      rep.payload = tail_payload(r);
      rep.excluded_draws = r.excluded;
      rep.verdict = r.passed ? Verdict::Pass : Verdict::Fail;
      break;
    }
    case Experiment::Counterexample: {
      const CounterexampleReport r = counterexample_growth(
          cfg.ensemble->n, cfg.d_list, cfg.trials, cfg.master_seed, cfg.workers);
      rep.payload = counterexample_payload(r);
      rep.excluded_draws = r.excluded;
      rep.verdict = r.passed ? Verdict::Pass : Verdict::Fail;
      break;
    }
    case Experiment::Hagelstein: {
      const HagelsteinReport r =
          check_hagelstein(cfg.components, cfg.trials, cfg.master_seed, cfg.workers);
      ordered_json p;
      p["components"] = r.components;
      p["trials"] = r.trials;
      p["left"] = r.left;
      p["per_component_sum"] = r.per_component_sum;
      p["right"] = r.right;
      p["ratio"] = r.ratio;
      p["passed"] = r.passed;
      rep.payload = std::move(p);
      rep.verdict = r.passed ? Verdict::Pass : Verdict::Fail;
      break;
    }
    case Experiment::GinibreLower: {
      const GinibreLowerReport r =
          check_ginibre_lower(cfg.ensemble->n, cfg.trials, cfg.master_seed, cfg.workers);
      ordered_json p;
      p["n"] = r.n;
      p["trials"] = r.trials;
      p["threshold"] = r.threshold;
      p["fraction"] = r.fraction;
      p["excluded"] = r.excluded;
      p["passed"] = r.passed;
      rep.payload = std::move(p);
      rep.excluded_draws = r.excluded;
      rep.verdict = r.passed ? Verdict::Pass : Verdict::Fail;
      break;
    }
    case Experiment::IdentitySuite: {
      rep.payload = run_identity_suite(cfg);
      rep.excluded_draws = rep.payload["excluded"].get<std::int64_t>();
      rep.verdict = rep.payload["passed"].get<bool>() ? Verdict::Pass : Verdict::Fail;
      break;
    }
    case Experiment::DensityCheck: {
      if (cfg.trials < 100000)
        throw ConfigError("config error: trials: density_check needs at least 1e5 samples");
      const DensityReport r =
          density_bound_check(*cfg.ensemble, cfg.trials, SeedPath{cfg.master_seed, 0});
      ordered_json p;
      p["samples"] = r.samples;
      p["bin_width"] = r.bin_width;
      p["bins"] = r.bins;
      p["window_lo"] = r.window_lo;
      p["window_hi"] = r.window_hi;
      p["max_density"] = r.max_density;
      p["threshold"] = r.threshold;
      p["passed"] = r.passed;
      rep.payload = std::move(p);
      rep.verdict = r.passed ? Verdict::Pass : Verdict::Fail;
      break;
    }
  }

  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

nlohmann::ordered_json report_to_json(const RunReport& rep) {
  ordered_json doc;
  doc["config"] = config_to_json(rep.config);
  doc["payload"] = rep.payload;
  doc["wall_time"] = rep.wall_time;
  doc["excluded_draws"] = rep.excluded_draws;
  doc["verdict"] = verdict_name(rep.verdict);
  return doc;
}

std::optional<std::string> report_to_csv(const RunReport& rep) {
  switch (rep.config.experiment) {
    case Experiment::TheoremTail:
    case Experiment::SstTail:
    case Experiment::EntryTail: {
      TailReport r;
      r.t_grid = rep.payload["t"].get<std::vector<double>>();
      r.threshold = rep.payload["threshold"].get<std::vector<double>>();
      r.exceed_count = rep.payload["exceed_count"].get<std::vector<std::int64_t>>();
      r.trials = rep.payload["trials"].get<std::int64_t>();
      r.empirical = rep.payload["empirical"].get<std::vector<double>>();
      r.ci_lower = rep.payload["ci_lower"].get<std::vector<double>>();
      r.ci_upper = rep.payload["ci_upper"].get<std::vector<double>>();
      r.bound = rep.payload["bound"].get<std::vector<double>>();
      r.capped_bound = rep.payload["capped_bound"].get<std::vector<double>>();
      r.pass = rep.payload["pass"].get<std::vector<bool>>();
      return tail_csv(r);
    }
    case Experiment::Counterexample: {
      CounterexampleReport r;
      r.d_list = rep.payload["d_list"].get<std::vector<double>>();
      r.trials = rep.payload["trials"].get<std::vector<std::int64_t>>();
      r.median_norm = rep.payload["median_norm"].get<std::vector<double>>();
      r.scaled_median = rep.payload["scaled_median"].get<std::vector<double>>();
      r.exceed_fraction = rep.payload["exceed_fraction"].get<std::vector<double>>();
      r.pass = rep.payload["pass"].get<std::vector<bool>>();
      return counterexample_csv(r);
    }
    default:
      return std::nullopt;
  }
}

std::vector<std::string> write_report(const RunReport& rep) {
  std::vector<std::string> written;
  if (const auto csv = report_to_csv(rep)) {
    const std::string path = rep.config.output_path + ".csv";
    write_file(path, *csv);
    written.push_back(path);
  }
  const std::string jpath = rep.config.output_path + ".json";
  write_file(jpath, report_to_json(rep).dump(2) + "\n");
  written.push_back(jpath);
  return written;
}

}  // namespace smilab
