#ifndef SMILAB_RUNNER_HPP
#define SMILAB_RUNNER_HPP

#include <optional>
#include <string>
#include <vector>

#include "smilab/config.hpp"

namespace smilab {

// FAIL means a bound's pass rule was refuted by the data; operational
// problems (bad config, unwritable output) are reported as errors, not
// verdicts.  REPORT_ONLY is reserved for experiments without a pass
// rule; every current experiment has one.
enum class Verdict { Pass, Fail, ReportOnly };

std::string verdict_name(Verdict v);
int verdict_exit_code(Verdict v);  // 0 for PASS / REPORT_ONLY, 1 for FAIL

struct RunReport {
  ExperimentConfig config;
  nlohmann::ordered_json payload;
  double wall_time = 0.0;  // seconds; the only schedule-dependent field
  std::int64_t excluded_draws = 0;
  Verdict verdict = Verdict::ReportOnly;
};

// Executes the experiment.  Every report field except wall_time is a
// pure function of (config, master_seed), independent of worker count.
RunReport run(const ExperimentConfig& cfg);

// Full JSON summary: config echo, payload, wall time, verdict.
nlohmann::ordered_json report_to_json(const RunReport& rep);

// CSV table for the experiments with a pinned row schema (theorem_tail,
// sst_tail, entry_tail, counterexample); nullopt for the rest.
std::optional<std::string> report_to_csv(const RunReport& rep);

// Writes <output_path>.csv (when tabular) and <output_path>.json.
// Returns the paths written; throws IoError on any write failure.
std::vector<std::string> write_report(const RunReport& rep);

}  // namespace smilab

#endif
