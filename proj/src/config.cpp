#include "smilab/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace smilab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw ConfigError("config error: " + field + ": " + why);
}

Experiment experiment_from_name(const std::string& name) {
  static const std::pair<const char*, Experiment> table[] = {
      {"theorem_tail", Experiment::TheoremTail},
      {"sst_tail", Experiment::SstTail},
      {"entry_tail", Experiment::EntryTail},
      {"counterexample", Experiment::Counterexample},
      {"hagelstein", Experiment::Hagelstein},
      {"ginibre_lower", Experiment::GinibreLower},
      {"identity_suite", Experiment::IdentitySuite},
      {"density_check", Experiment::DensityCheck},
  };
  for (const auto& [n, e] : table)
    if (name == n) return e;
  fail("experiment", "unknown experiment " + quoted(name));
}

Family family_from_name(const std::string& name) {
  static const std::pair<const char*, Family> table[] = {
      {"bounded_uniform", Family::BoundedUniform},
      {"bounded_gaussian", Family::BoundedGaussian},
      {"cauchy", Family::Cauchy},
      {"ginibre", Family::Ginibre},
      {"lazy_rademacher", Family::LazyRademacher},
  };
  for (const auto& [n, f] : table)
    if (name == n) return f;
  fail("ensemble.family", "unknown family " + quoted(name));
}

void reject_unknown_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                         const std::string& scope) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      fail(scope.empty() ? item.key() : scope + "." + item.key(),
           "unknown key (strict mode)");
}

const ordered_json& require_key(const ordered_json& obj, const std::string& key,
                                const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, "required field is missing");
  return *it;
}

double as_double(const ordered_json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::int64_t as_int(const ordered_json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::uint64_t as_uint64(const ordered_json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    const std::int64_t s = v.get<std::int64_t>();
    if (s < 0) fail(path, "must be nonnegative");
    return static_cast<std::uint64_t>(s);
  }
  fail(path, "expected an integer");
}

std::string as_string(const ordered_json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> as_number_list(const ordered_json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& item : v) out.push_back(as_double(item, path));
  return out;
}

ShiftSpec parse_shift(const ordered_json& v, int n) {
  if (!v.is_object()) fail("ensemble.shift", "expected an object");
  const std::string kind = as_string(require_key(v, "kind", "ensemble.shift.kind"),
                                     "ensemble.shift.kind");
  if (kind == "zero") {
    reject_unknown_keys(v, {"kind"}, "ensemble.shift");
    return ShiftSpec::zero();
  }
  if (kind == "scalar_identity") {
    reject_unknown_keys(v, {"kind", "c"}, "ensemble.shift");
    return ShiftSpec::scalar_identity(
        as_double(require_key(v, "c", "ensemble.shift.c"), "ensemble.shift.c"));
  }
  if (kind == "counterexample_diag") {
    reject_unknown_keys(v, {"kind", "d"}, "ensemble.shift");
    const double d = as_double(require_key(v, "d", "ensemble.shift.d"), "ensemble.shift.d");
    if (d < 0.0) fail("ensemble.shift.d", "must be nonnegative");
    return ShiftSpec::counterexample_diag(d);
  }
  if (kind == "explicit_symmetric") {
    reject_unknown_keys(v, {"kind", "matrix"}, "ensemble.shift");
    const ordered_json& rows = require_key(v, "matrix", "ensemble.shift.matrix");
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n))
      fail("ensemble.shift.matrix", "expected an array of " + std::to_string(n) + " rows");
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
      const ordered_json& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
        fail("ensemble.shift.matrix", "row " + std::to_string(i + 1) + " has the wrong length");
      for (int j = 0; j < n; ++j)
        m(i, j) = as_double(row[static_cast<std::size_t>(j)], "ensemble.shift.matrix");
    }
    try {
      return ShiftSpec::explicit_symmetric(SymMatrix::from_matrix(m));
    } catch (const SymmetryError&) {
      fail("ensemble.shift.matrix", "matrix is not symmetric");
    }
  }
  fail("ensemble.shift.kind", "unknown kind " + quoted(kind));
}

EnsembleSpec parse_ensemble(const ordered_json& v, bool shift_allowed) {
  if (!v.is_object()) fail("ensemble", "expected an object");
  reject_unknown_keys(v, {"family", "K", "n", "shift"}, "ensemble");

  EnsembleSpec spec;
  spec.family =
      family_from_name(as_string(require_key(v, "family", "ensemble.family"), "ensemble.family"));

  const std::int64_t n = as_int(require_key(v, "n", "ensemble.n"), "ensemble.n");
  if (n < 1 || n > 100000) fail("ensemble.n", "must be a positive matrix order");
  spec.n = static_cast<int>(n);

  if (family_is_continuous(spec.family)) {
    spec.K = as_double(require_key(v, "K", "ensemble.K"), "ensemble.K");
    if (!(spec.K > 0.0)) fail("ensemble.K", "must be > 0");
  } else {
    // K has no meaning without a density; canonicalize so the config
    // echo round-trips.
    spec.K = 1.0;
  }

  if (v.contains("shift")) {
    if (!shift_allowed) fail("ensemble.shift", "not allowed for this experiment");
    spec.shift = parse_shift(v["shift"], spec.n);
  }
  spec.validate();
  return spec;
}

struct FieldRules {
  std::set<std::string> allowed;
  std::set<std::string> required;
};

FieldRules rules_for(Experiment e) {
  FieldRules r;
  r.allowed = {"experiment", "master_seed", "workers", "output_path"};
  switch (e) {
    case Experiment::TheoremTail:
    case Experiment::SstTail:
      r.allowed.insert({"ensemble", "trials", "t_grid"});
      r.required = {"ensemble"};
      break;
    case Experiment::EntryTail:
      r.allowed.insert({"ensemble", "trials", "t_grid", "entry"});
      r.required = {"ensemble", "entry"};
      break;
    case Experiment::Counterexample:
      r.allowed.insert({"ensemble", "trials", "d_list"});
      r.required = {"ensemble", "d_list"};
      break;
    case Experiment::Hagelstein:
      r.allowed.insert({"components", "trials"});
      r.required = {"components"};
      break;
    case Experiment::GinibreLower:
      r.allowed.insert({"ensemble", "trials"});
      r.required = {"ensemble"};
      break;
    case Experiment::IdentitySuite:
      r.allowed.insert({"n_max", "cases"});
      break;
    case Experiment::DensityCheck:
      r.allowed.insert({"ensemble", "trials"});
      r.required = {"ensemble"};
      break;
  }
  return r;
}

}  // namespace

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::TheoremTail: return "theorem_tail";
    case Experiment::SstTail: return "sst_tail";
    case Experiment::EntryTail: return "entry_tail";
    case Experiment::Counterexample: return "counterexample";
    case Experiment::Hagelstein: return "hagelstein";
    case Experiment::GinibreLower: return "ginibre_lower";
    case Experiment::IdentitySuite: return "identity_suite";
    case Experiment::DensityCheck: return "density_check";
  }
  return "unknown";
}

ExperimentConfig parse_config(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports a byte offset; translate to line/column.
    std::size_t line = 1, col = 1;
    const std::size_t stop = e.byte > 0 ? e.byte - 1 : 0;
    for (std::size_t k = 0; k < stop && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("config parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  if (!j.is_object()) fail("(document)", "top level must be a JSON object");

  ExperimentConfig cfg;
  cfg.experiment = experiment_from_name(
      as_string(require_key(j, "experiment", "experiment"), "experiment"));
  const FieldRules rules = rules_for(cfg.experiment);
  reject_unknown_keys(j, rules.allowed, "");
  for (const auto& key : rules.required) require_key(j, key, key);

  if (j.contains("ensemble")) {
    const bool shift_allowed = cfg.experiment != Experiment::Counterexample &&
                               cfg.experiment != Experiment::GinibreLower;
    cfg.ensemble = parse_ensemble(j["ensemble"], shift_allowed);
    switch (cfg.experiment) {
      case Experiment::TheoremTail:
      case Experiment::EntryTail:
      case Experiment::DensityCheck:
        if (!family_is_continuous(cfg.ensemble->family))
          fail("ensemble.family", "this experiment needs a continuous family");
        break;
      case Experiment::SstTail:
      case Experiment::GinibreLower:
        if (cfg.ensemble->family != Family::Ginibre)
          fail("ensemble.family", "this experiment needs family \"ginibre\"");
        break;
      case Experiment::Counterexample:
        if (cfg.ensemble->family != Family::LazyRademacher)
          fail("ensemble.family", "this experiment needs family \"lazy_rademacher\"");
        break;
      default:
        break;
    }
  }

  if (j.contains("trials")) {
    cfg.trials = as_int(j["trials"], "trials");
    if (cfg.trials < 1) fail("trials", "must be >= 1");
  }

  if (j.contains("t_grid")) {
    cfg.t_grid = as_number_list(j["t_grid"], "t_grid");
    for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
      if (!(cfg.t_grid[i] > 0.0)) fail("t_grid", "values must be > 0");
      if (i > 0 && cfg.t_grid[i] <= cfg.t_grid[i - 1])
        fail("t_grid", "values must be strictly increasing");
    }
  }

  if (j.contains("d_list")) {
    cfg.d_list = as_number_list(j["d_list"], "d_list");
    for (double d : cfg.d_list)
      if (!(d > 0.0)) fail("d_list", "values must be > 0");
  }

  if (j.contains("entry")) {
    const ordered_json& e = j["entry"];
    if (!e.is_array() || e.size() != 2) fail("entry", "expected a pair [i, j]");
    const std::int64_t i = as_int(e[0], "entry");
    const std::int64_t jj = as_int(e[1], "entry");
    const int n = cfg.ensemble->n;
    if (i < 1 || i > n || jj < 1 || jj > n)
      fail("entry", "indices must lie in 1.." + std::to_string(n));
    cfg.entry_i = static_cast<int>(i - 1);
    cfg.entry_j = static_cast<int>(jj - 1);
  }

  if (j.contains("components")) {
    const std::int64_t m = as_int(j["components"], "components");
    if (m < 1 || m > 1000000) fail("components", "must be a positive count");
    cfg.components = static_cast<int>(m);
  }

  if (j.contains("n_max")) {
    const std::int64_t m = as_int(j["n_max"], "n_max");
    if (m < 2 || m > 64) fail("n_max", "must lie in 2..64");
    cfg.n_max = static_cast<int>(m);
  }

  if (j.contains("cases")) {
    const std::int64_t c = as_int(j["cases"], "cases");
    if (c < 1 || c > 1000000000) fail("cases", "must lie in 1..1e9");
    cfg.cases = static_cast<int>(c);
  }

  cfg.master_seed = j.contains("master_seed") ? as_uint64(j["master_seed"], "master_seed") : 0;

  if (j.contains("workers")) {
    const std::int64_t w = as_int(j["workers"], "workers");
    if (w < 0 || w > 4096) fail("workers", "must lie in 0..4096");
    cfg.workers = static_cast<int>(w);
  }

  if (j.contains("output_path")) {
    cfg.output_path = as_string(j["output_path"], "output_path");
    if (cfg.output_path.empty()) fail("output_path", "must not be empty");
  } else {
    cfg.output_path = "smilab_" + experiment_name(cfg.experiment);
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + quoted(path));
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read config file " + quoted(path));
  return parse_config(buf.str());
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg) {
  ordered_json j;
  j["experiment"] = experiment_name(cfg.experiment);

  if (cfg.ensemble) {
    const EnsembleSpec& spec = *cfg.ensemble;
    ordered_json e;
    e["family"] = family_name(spec.family);
    if (family_is_continuous(spec.family)) e["K"] = spec.K;
    e["n"] = spec.n;
    const bool shift_allowed = cfg.experiment != Experiment::Counterexample &&
                               cfg.experiment != Experiment::GinibreLower;
    if (shift_allowed) {
      ordered_json s;
      switch (spec.shift.kind) {
        case ShiftSpec::Kind::Zero:
          s["kind"] = "zero";
          break;
        case ShiftSpec::Kind::ScalarIdentity:
          s["kind"] = "scalar_identity";
          s["c"] = spec.shift.c;
          break;
        case ShiftSpec::Kind::CounterexampleDiag:
          s["kind"] = "counterexample_diag";
          s["d"] = spec.shift.d;
          break;
        case ShiftSpec::Kind::ExplicitSymmetric: {
          s["kind"] = "explicit_symmetric";
          ordered_json rows = ordered_json::array();
          const Matrix& m = spec.shift.matrix->full();
          for (int i = 0; i < m.rows(); ++i) {
            ordered_json row = ordered_json::array();
            for (int jj = 0; jj < m.cols(); ++jj) row.push_back(m(i, jj));
            rows.push_back(std::move(row));
          }
          s["matrix"] = std::move(rows);
          break;
        }
      }
      e["shift"] = std::move(s);
    }
    j["ensemble"] = std::move(e);
  }

  switch (cfg.experiment) {
    case Experiment::EntryTail:
      j["entry"] = {cfg.entry_i + 1, cfg.entry_j + 1};
      break;
    case Experiment::Counterexample:
      j["d_list"] = cfg.d_list;
      break;
    case Experiment::Hagelstein:
      j["components"] = cfg.components;
      break;
    case Experiment::IdentitySuite:
      j["n_max"] = cfg.n_max;
      j["cases"] = cfg.cases;
      break;
    default:
      break;
  }

  if (cfg.experiment != Experiment::IdentitySuite) j["trials"] = cfg.trials;
  if (cfg.experiment == Experiment::TheoremTail || cfg.experiment == Experiment::SstTail ||
      cfg.experiment == Experiment::EntryTail)
    j["t_grid"] = cfg.t_grid;

  j["master_seed"] = cfg.master_seed;
  j["workers"] = cfg.workers;
  j["output_path"] = cfg.output_path;
  return j;
}

}  // namespace smilab
