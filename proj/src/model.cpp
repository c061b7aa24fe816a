#include "cldecohere/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cldecohere {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void ModelConstants::validate() const {
  require(finite(hbar) && hbar > 0.0, "hbar must be positive");
  require(finite(mass) && mass > 0.0, "mass must be positive");
  require(finite(g), "g must be finite");
}

void Environment::validate() const {
  require(finite(gamma) && gamma >= 0.0, "gamma must be non-negative");
  require(finite(kT) && kT >= 0.0, "kT must be non-negative");
}

double Environment::diffusion(const ModelConstants& c) const {
  return diffusion_coefficient(*this, c);
}

double diffusion_coefficient(const Environment& env, const ModelConstants& c) {
  env.validate();
  return 2.0 * c.mass * env.gamma * env.kT;
}

void GaussianPacket::validate() const {
  require(finite(x0) && finite(p0) && finite(eta), "packet parameters must be finite");
  require(finite(sigma0) && sigma0 > 0.0, "sigma0 must be positive");
}

double GaussianPacket::position_uncertainty() const {
  return sigma0 * std::sqrt(1.0 + eta * eta);
}

double GaussianPacket::momentum_uncertainty(const ModelConstants& c) const {
  return c.hbar / (2.0 * sigma0);
}

double GaussianPacket::uncertainty_product(const ModelConstants& c) const {
  return position_uncertainty() * momentum_uncertainty(c);
}

void UniformGrid::validate() const {
  require(finite(min) && finite(max), "grid bounds must be finite");
  require(min < max, "grid requires min < max");
  require(count >= 2, "grid requires at least two samples");
}

double UniformGrid::spacing() const {
  return (max - min) / static_cast<double>(count - 1);
}

double UniformGrid::at(std::size_t i) const {
  // the last sample is pinned to max so that rounding never moves the end point
  if (i + 1 == count) return max;
  return min + spacing() * static_cast<double>(i);
}

std::vector<double> UniformGrid::values() const {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = at(i);
  return out;
}

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::arrival: return "arrival";
    case ScenarioKind::cat: return "cat";
    case ScenarioKind::stretch_cat: return "stretch-cat";
    case ScenarioKind::identical_single: return "identical-single";
    case ScenarioKind::identical_joint: return "identical-joint";
    case ScenarioKind::shutter: return "shutter";
    case ScenarioKind::trajectories: return "trajectories";
    case ScenarioKind::residual_check: return "residual-check";
  }
  return "unknown";
}

std::string_view to_string(Statistics s) {
  switch (s) {
    case Statistics::boson: return "boson";
    case Statistics::fermion: return "fermion";
    case Statistics::maxwell_boltzmann: return "maxwell-boltzmann";
  }
  return "unknown";
}

ScenarioKind parse_scenario_kind(std::string_view name) {
  for (auto k : {ScenarioKind::arrival, ScenarioKind::cat, ScenarioKind::stretch_cat,
                 ScenarioKind::identical_single, ScenarioKind::identical_joint,
                 ScenarioKind::shutter, ScenarioKind::trajectories,
                 ScenarioKind::residual_check}) {
    if (to_string(k) == name) return k;
  }
  throw std::domain_error("unknown scenario kind: " + std::string(name));
}

Statistics parse_statistics(std::string_view name) {
  if (name == "boson") return Statistics::boson;
  if (name == "fermion") return Statistics::fermion;
  if (name == "maxwell-boltzmann" || name == "mb") return Statistics::maxwell_boltzmann;
  throw std::domain_error("unknown statistics: " + std::string(name));
}

void Scenario::validate() const {
  constants.validate();
  environment.validate();
  for (const auto& p : packets) p.validate();
  if (space) space->validate();
  if (time) time->validate();

  const std::string name(to_string(kind));
  auto need = [&](bool ok, const std::string& what) { require(ok, name + ": " + what); };
  auto all_minimal = [&] {
    for (const auto& p : packets)
      if (p.eta != 0.0) return false;
    return true;
  };

  if (kind != ScenarioKind::cat && kind != ScenarioKind::residual_check)
    need(constants.g == 0.0, "a constant force is only supported for cat and residual-check");

  switch (kind) {
    case ScenarioKind::arrival:
      need(packets.size() == 1 || packets.size() == 2, "needs one packet or a two-packet cat");
      need(detector.has_value() && std::isfinite(*detector), "needs a finite detector position");
      need(time.has_value(), "needs a time grid");
      need(time->min >= 0.0, "time grid must start at t >= 0");
      break;
    case ScenarioKind::cat:
      need(packets.size() == 2, "needs exactly two packets");
      need(all_minimal(), "needs eta = 0 packets (use stretch-cat)");
      need(space.has_value() && time.has_value(), "needs space and time grids");
      break;
    case ScenarioKind::stretch_cat:
      need(packets.size() == 2, "needs exactly two packets");
      need(time.has_value(), "needs a time grid");
      break;
    case ScenarioKind::identical_single:
    case ScenarioKind::identical_joint:
      need(packets.size() == 2 || packets.size() == 4,
           "needs two packets (psi, phi) or four (two-branch psi, two-branch phi)");
      need(all_minimal(), "needs eta = 0 packets");
      need(statistics.has_value(), "needs a statistics selector");
      need(space.has_value() && time.has_value(), "needs space and time grids");
      if (kind == ScenarioKind::identical_joint)
        need(detector.has_value(), "needs the fixed first-particle position (detector)");
      break;
    case ScenarioKind::shutter:
      need(packets.empty(), "takes no packets");
      need(wavenumber.has_value() && *wavenumber > 0.0, "needs a positive wavenumber k");
      need(space.has_value() && time.has_value(), "needs space and time grids");
      need(time->min > 0.0, "time grid must start at t > 0");
      break;
    case ScenarioKind::trajectories:
      need(packets.size() == 1 || packets.size() == 2, "needs one packet or a two-packet cat");
      need(time.has_value(), "needs a time grid");
      need(time->min == 0.0, "time grid must start at t = 0");
      break;
    case ScenarioKind::residual_check:
      need(packets.size() == 1, "needs exactly one packet");
      break;
  }
}

}  // namespace cldecohere
