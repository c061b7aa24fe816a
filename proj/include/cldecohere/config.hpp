#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>

#include "cldecohere/model.hpp"

namespace cldecohere {

class ConfigError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Flat key = value assignments; `#` starts a comment, blank lines are skipped.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config(std::istream& in);
ConfigMap load_config(const std::filesystem::path& path);

/// Builds and validates a Scenario. Recognized keys:
///   kind, hbar, mass, g, gamma, kT, packet1 .. packet4 ("x0, p0, sigma0[, eta]"),
///   x ("min, max, count"), t ("min, max, count"), detector, k, statistics.
/// Unknown keys other than the run options (name, tol, r_min, window, step,
/// seeds) are rejected.
Scenario scenario_from_config(const ConfigMap& cfg);

double config_number(const ConfigMap& cfg, const std::string& key, double fallback);

}  // namespace cldecohere
