#include "cldecohere/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace cldecohere {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' is not a number: " + text);
  }
  if (trim(text.substr(used)).size() != 0 || !std::isfinite(v))
    throw ConfigError("config: '" + key + "' is not a finite number: " + text);
  return v;
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_number(key, trim(item)));
  return out;
}

UniformGrid to_grid(const std::string& key, const std::string& text) {
  const std::vector<double> v = to_list(key, text);
  if (v.size() != 3 || v[2] < 1.0 || v[2] != std::floor(v[2]))
    throw ConfigError("config: '" + key + "' must be 'min, max, count'");
  UniformGrid g{v[0], v[1], static_cast<std::size_t>(v[2])};
  return g;
}

}  // namespace

ConfigMap parse_config(std::istream& in) {
  ConfigMap out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(number) + ": empty key");
    if (out.count(key)) throw ConfigError("config line " + std::to_string(number) + ": duplicate key " + key);
    out[key] = value;
  }
  return out;
}

ConfigMap load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  return parse_config(in);
}

double config_number(const ConfigMap& cfg, const std::string& key, double fallback) {
  const auto it = cfg.find(key);
  return it == cfg.end() ? fallback : to_number(key, it->second);
}

Scenario scenario_from_config(const ConfigMap& cfg) {
  static const std::set<std::string> known{
      "kind", "hbar", "mass", "g", "gamma", "kT", "packet1", "packet2", "packet3", "packet4",
      "x", "t", "detector", "k", "statistics", "name", "tol", "r_min", "window", "step", "seeds"};
  for (const auto& [key, value] : cfg)
    if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "'");

  const auto kind = cfg.find("kind");
  if (kind == cfg.end()) throw ConfigError("config: 'kind' is required");

  Scenario s;
  s.kind = parse_scenario_kind(kind->second);
  s.constants.hbar = config_number(cfg, "hbar", 1.0);
  s.constants.mass = config_number(cfg, "mass", 1.0);
  s.constants.g = config_number(cfg, "g", 0.0);
  s.environment.gamma = config_number(cfg, "gamma", 0.0);
  s.environment.kT = config_number(cfg, "kT", 0.0);
  for (int i = 1; i <= 4; ++i) {
    const auto it = cfg.find("packet" + std::to_string(i));
    if (it == cfg.end()) break;
    const std::vector<double> v = to_list(it->first, it->second);
    if (v.size() != 3 && v.size() != 4)
      throw ConfigError("config: '" + it->first + "' must be 'x0, p0, sigma0[, eta]'");
    s.packets.push_back({v[0], v[1], v[2], v.size() == 4 ? v[3] : 0.0});
  }
  if (auto it = cfg.find("x"); it != cfg.end()) s.space = to_grid("x", it->second);
  if (auto it = cfg.find("t"); it != cfg.end()) s.time = to_grid("t", it->second);
  if (auto it = cfg.find("detector"); it != cfg.end()) s.detector = to_number("detector", it->second);
  if (auto it = cfg.find("k"); it != cfg.end()) s.wavenumber = to_number("k", it->second);
  if (auto it = cfg.find("statistics"); it != cfg.end()) s.statistics = parse_statistics(it->second);
  s.validate();
  return s;
}

}  // namespace cldecohere
