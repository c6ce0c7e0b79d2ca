#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "csl/clump.hpp"
#include "csl/driver.hpp"

namespace {

// exit codes: 0 ok, 1 config error, 2 numeric failure, 3 checks failed
enum ExitCode { kOk = 0, kConfigError = 1, kNumericError = 2, kCheckFailed = 3 };

void apply_preset(csl::ExperimentConfig& cfg, const std::string& preset) {
  csl::ClumpParams p;
  if (preset == "dimensionless") p = csl::ClumpParams::dimensionless();
  else if (preset == "grw") p = csl::ClumpParams::grw();
  else if (preset == "adler") p = csl::ClumpParams::adler();
  else throw std::invalid_argument("config error: unknown preset \"" + preset + "\"");
  // preset fills the physical parameters the experiment accepts; explicit
  // params in the config file still win, so only overwrite defaults
  for (const auto& [key, value] : {std::pair<std::string, double>{"lambda", p.lambda},
                                   {"a", p.a},
                                   {"M", p.M}})
    if (cfg.params.count(key)) cfg.params[key] = value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collapse-dynamics experiment runner"};
  std::string config_path;
  std::string out_dir;
  std::string preset;
  std::uint64_t seed = 0;
  bool have_seed = false;
  int n_threads = 1;
  bool check = false;

  app.add_option("--config", config_path, "JSON experiment config")->required();
  auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
  app.add_option("--out", out_dir, "override the output directory");
  app.add_option("--threads", n_threads, "worker threads for ensembles")
      ->check(CLI::PositiveNumber);
  app.add_option("--preset", preset,
                 "parameter preset: dimensionless, grw or adler")
      ->check(CLI::IsMember({"dimensionless", "grw", "adler"}));
  app.add_flag("--check", check, "evaluate acceptance thresholds, exit 3 on failure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }
  have_seed = seed_opt->count() > 0;

  std::string text;
  {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "config error: cannot read " << config_path << "\n";
      return kConfigError;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  csl::ExperimentConfig cfg;
  try {
    cfg = csl::parse_config(text);
    if (have_seed) cfg.seed = seed;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!preset.empty()) apply_preset(cfg, preset);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  }

  try {
    const auto report = csl::run_experiment(cfg, n_threads, check);
    std::cout << report.report.dump(2) << "\n";
    if (check && !report.checks_passed) {
      std::cerr << "checks failed\n";
      return kCheckFailed;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumericError;
  }
  return kOk;
}
