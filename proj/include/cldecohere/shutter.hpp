#pragma once

#include <string>
#include <vector>

#include "cldecohere/model.hpp"
#include "cldecohere/numerics.hpp"

namespace cldecohere {

/// Plane wave exp(ikx) behind a shutter at x = 0, released at t = 0, in the
/// negligible-dissipation limit: the bath enters only through D.
struct ShutterConfig {
  double k = 1.0;
  Environment env;
  double r_min = -200.0;  ///< lower cutoff of the R' integral
  double tol = 1e-10;     ///< absolute tolerance on P

  void validate() const;
};

/// Human-readable warnings when gamma * t_max leaves the negligible-dissipation regime.
std::vector<std::string> shutter_warnings(const ShutterConfig& cfg, double t_max);

/// Free propagator of the master equation without friction, G(x, y, t | x', y', 0).
Complex shutter_propagator(double x, double y, double t, double xp, double yp, double D,
                           const ModelConstants& c);

/// f(x, t, R') = int_{2R'}^{-2R'} exp(-D t r'^2 / (3 hbar^2) + i q r') dr',
/// q = k - m (x - R') / (hbar t). Real for every D >= 0; D = 0 uses the sine form.
double shutter_integrand(double x, double t, double r_prime, double k, double D,
                         const ModelConstants& c);

/// Beam density (m / 2 pi hbar t) int_{r_min}^0 f dR'. D = 0 returns the Fresnel form.
double shutter_density(double x, double t, const ShutterConfig& cfg, const ModelConstants& c);

/// Same integral without the D = 0 shortcut; throws ConvergenceError with the partial value.
double shutter_density_quadrature(double x, double t, const ShutterConfig& cfg,
                                  const ModelConstants& c);

/// Zero-temperature closed form 1/2 (C(xi) + 1/2)^2 + 1/2 (S(xi) + 1/2)^2,
/// xi = sqrt(m / (pi hbar t)) (hbar k t / m - x).
double shutter_density_zeroT(double x, double t, double k, const ModelConstants& c);

/// Classical step: 1 where a particle of velocity hbar k / m has passed x, 0 elsewhere, 1/2 on the front.
double shutter_density_classical(double x, double t, double k, const ModelConstants& c);

}  // namespace cldecohere
