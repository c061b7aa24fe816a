#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cldecohere/config.hpp"

namespace cldecohere {

struct RunOptions {
  std::filesystem::path out_dir{"."};
  std::size_t jobs = 0;        ///< 0: CL_DECOHERE_JOBS, else 1
  std::optional<double> tol;   ///< overrides the quadrature tolerances
};

struct RunManifest {
  std::string scenario;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::string version;
  double wall_time_s = 0.0;
  std::vector<std::string> files;  ///< relative to the output directory
  bool partial = false;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;

  nlohmann::ordered_json to_json() const;
};

/// Exit codes: 0 success, 2 invalid scenario, 3 non-convergence (partial outputs).
struct RunOutcome {
  RunManifest manifest;
  int exit_code = 0;
  std::string message;
};

struct PresetInfo {
  std::string name;
  std::string figure;
  std::string parameters;
};

const std::vector<PresetInfo>& list_presets();
bool is_preset(const std::string& name);

/// Runs a named preset and writes its CSV files plus manifest.json into opts.out_dir.
RunOutcome run_preset(const std::string& name, const RunOptions& opts);

/// Runs the single scenario described by a flat config (see scenario_from_config).
RunOutcome run_config(const ConfigMap& cfg, const RunOptions& opts);

}  // namespace cldecohere
