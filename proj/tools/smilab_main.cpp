// smilab: experiment runner for shifted random-matrix laboratories.
//
// smilab run <config.json> [--workers N] [--seed S]
//   executes the experiment, writes <output_path>.csv/.json, prints the
//   verdict; exit 0 on PASS/REPORT_ONLY, 1 on FAIL, 2 on config
//   errors, 3 on I/O errors.
// smilab validate <config.json>
//   parses and validates only.
//
// Worker-count precedence: --workers, then the config file, then the
// SMILAB_WORKERS environment variable, then auto (hardware threads).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "smilab/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw smilab::IoError("cannot open config file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw smilab::IoError("cannot read config file \"" + path + "\"");
  return buf.str();
}

int env_workers() {
  const char* raw = std::getenv("SMILAB_WORKERS");
  if (raw == nullptr || *raw == '\0') return -1;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 0 || v > 4096)
    throw smilab::ConfigError("SMILAB_WORKERS must be an integer in 0..4096, got \"" +
                              std::string(raw) + "\"");
  return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seeded Monte Carlo and identity experiments for shifted random matrices"};
  app.require_subcommand(1);

  std::string config_path;
  int workers_flag = 0;
  std::uint64_t seed_flag = 0;

  CLI::App* cmd_run = app.add_subcommand("run", "execute an experiment and write reports");
  cmd_run->add_option("config", config_path, "JSON experiment config")->required();
  CLI::Option* opt_workers =
      cmd_run->add_option("--workers", workers_flag, "worker thread count (0 = auto)");
  CLI::Option* opt_seed = cmd_run->add_option("--seed", seed_flag, "master seed override");

  CLI::App* cmd_validate = app.add_subcommand("validate", "parse a config without running");
  cmd_validate->add_option("config", config_path, "JSON experiment config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const std::string text = read_file(config_path);
    smilab::ExperimentConfig cfg = smilab::parse_config(text);

    if (cmd_validate->parsed()) {
      std::cout << "OK: " << smilab::experiment_name(cfg.experiment) << '\n';
      return 0;
    }

    if (opt_workers->count() > 0) {
      if (workers_flag < 0 || workers_flag > 4096)
        throw smilab::ConfigError("--workers must lie in 0..4096");
      cfg.workers = workers_flag;
    } else if (!nlohmann::json::parse(text).contains("workers")) {
      const int env = env_workers();
      if (env >= 0) cfg.workers = env;
    }
    if (opt_seed->count() > 0) cfg.master_seed = seed_flag;

    const smilab::RunReport rep = smilab::run(cfg);
    const std::vector<std::string> files = smilab::write_report(rep);

    std::cout << "experiment: " << smilab::experiment_name(cfg.experiment) << '\n';
    for (const std::string& f : files) std::cout << "wrote " << f << '\n';
    std::cout << "verdict: " << smilab::verdict_name(rep.verdict) << '\n';
    return smilab::verdict_exit_code(rep.verdict);
  } catch (const smilab::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const smilab::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const smilab::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const smilab::UnsupportedFamilyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const smilab::IndexError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const smilab::DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}
