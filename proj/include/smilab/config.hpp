#ifndef SMILAB_CONFIG_HPP
#define SMILAB_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "smilab/ensembles.hpp"

namespace smilab {

enum class Experiment {
  TheoremTail,
  SstTail,
  EntryTail,
  Counterexample,
  Hagelstein,
  GinibreLower,
  IdentitySuite,
  DensityCheck,
};

std::string experiment_name(Experiment e);

// A fully validated experiment description.  Parsing is strict: unknown
// keys and keys that do not apply to the chosen experiment are rejected
// with an error naming the field, so a typo can never silently change a
// campaign.  All defaults are materialized at parse time, which makes
// the round trip parse(serialize(cfg)) == cfg exact.
struct ExperimentConfig {
  Experiment experiment = Experiment::TheoremTail;
  std::optional<EnsembleSpec> ensemble;   // absent for hagelstein / identity_suite
  std::int64_t trials = 10000;            // density_check reads this as the sample count
  std::vector<double> t_grid = {1, 2, 5, 10, 20, 50, 100};
  std::vector<double> d_list;             // counterexample only
  int entry_i = 0;                        // entry_tail only; 0-based internally,
  int entry_j = 0;                        // 1-based in the JSON "entry" pair
  int components = 0;                     // hagelstein only
  int n_max = 8;                          // identity_suite
  int cases = 1000;                       // identity_suite
  std::uint64_t master_seed = 0;
  int workers = 0;                        // 0 = hardware concurrency
  std::string output_path;                // default "smilab_<experiment>"

  bool operator==(const ExperimentConfig& o) const = default;
};

// Parses and validates a JSON config document.  Malformed JSON raises
// ConfigError carrying line and column; semantic problems raise
// ConfigError naming the offending field.
ExperimentConfig parse_config(const std::string& text);

// Reads the file (IoError on failure) and parses it.
ExperimentConfig parse_config_file(const std::string& path);

// Serializes with only the keys that apply to cfg.experiment, in a
// fixed order, defaults included.
nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg);

}  // namespace smilab

#endif
