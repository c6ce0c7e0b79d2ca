#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

namespace csl {

// Validated experiment description.  `params` holds the per-experiment
// numeric parameters, with defaults already applied.
struct ExperimentConfig {
  std::string experiment;
  std::map<std::string, double> params;
  std::uint64_t seed = 1;
  std::size_t n_traj = 10000;
  std::string out_dir = ".";
};

// Parses and validates a JSON config document.  Unknown experiments,
// unknown keys, missing required keys and non-positive physical
// parameters are rejected with the offending key named in the message.
ExperimentConfig parse_config(const std::string& text);

struct RunReport {
  nlohmann::json report;     // full JSON report (also written to disk)
  std::string csv_path;
  std::string json_path;
  bool checks_passed = true; // meaningful only when check was requested
};

// Runs one experiment, writing <experiment>_<seed>.csv and
// <experiment>_<seed>.json into out_dir.  Trajectory ensembles fan out
// over n_threads with stream-indexed RNG and fixed-order aggregation, so
// the outputs are byte-identical for any thread count.  When `check` is
// set the per-experiment acceptance thresholds are evaluated in-process.
RunReport run_experiment(const ExperimentConfig& cfg, int n_threads = 1,
                         bool check = false);

inline constexpr const char* kLibraryVersion = "0.1.0";

}  // namespace csl
