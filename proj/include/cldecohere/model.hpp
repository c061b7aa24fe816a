#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cldecohere {

/// Units and the constant force of the linear potential V(x) = m g x.
struct ModelConstants {
  double hbar = 1.0;
  double mass = 1.0;
  double g = 0.0;

  void validate() const;
};

/// Bath parameters. The diffusion coefficient is always derived, never stored.
struct Environment {
  double gamma = 0.0;  ///< relaxation rate
  double kT = 0.0;     ///< k_B T

  void validate() const;
  double diffusion(const ModelConstants& c) const;
};

/// D = 2 m gamma k_B T. Throws std::domain_error on negative gamma or kT.
double diffusion_coefficient(const Environment& env, const ModelConstants& c);

/// Initial (possibly stretched) Gaussian wave packet.
struct GaussianPacket {
  double x0 = 0.0;
  double p0 = 0.0;
  double sigma0 = 1.0;
  double eta = 0.0;

  void validate() const;
  double position_uncertainty() const;
  double momentum_uncertainty(const ModelConstants& c) const;
  double uncertainty_product(const ModelConstants& c) const;
};

/// Uniform samples min, min + h, ..., max.
struct UniformGrid {
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 2;

  void validate() const;
  double spacing() const;
  double at(std::size_t i) const;
  std::vector<double> values() const;
};

using SpaceGrid = UniformGrid;
using TimeGrid = UniformGrid;

enum class ScenarioKind {
  arrival,
  cat,
  stretch_cat,
  identical_single,
  identical_joint,
  shutter,
  trajectories,
  residual_check,
};

enum class Statistics { boson, fermion, maxwell_boltzmann };

std::string_view to_string(ScenarioKind kind);
std::string_view to_string(Statistics s);
ScenarioKind parse_scenario_kind(std::string_view name);
Statistics parse_statistics(std::string_view name);

/// One fully specified computation. Which optional fields are required
/// depends on the kind; validate() enforces it.
struct Scenario {
  ScenarioKind kind = ScenarioKind::arrival;
  ModelConstants constants;
  Environment environment;
  std::vector<GaussianPacket> packets;
  std::optional<SpaceGrid> space;
  std::optional<TimeGrid> time;
  std::optional<double> detector;
  std::optional<double> wavenumber;
  std::optional<Statistics> statistics;

  void validate() const;
};

}  // namespace cldecohere
