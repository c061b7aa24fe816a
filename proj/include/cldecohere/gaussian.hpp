#pragma once

#include "cldecohere/model.hpp"
#include "cldecohere/numerics.hpp"

namespace cldecohere {

// Time integrals of the damped free motion. All three are evaluated by Taylor
// series when 2*gamma*t is small so that gamma -> 0 is exact.

/// tau(t) = (1 - exp(-2 gamma t)) / (2 gamma); tau = t at gamma = 0.
double tau(double t, double gamma);

/// int_0^t tau = (2 gamma t - 1 + exp(-2 gamma t)) / (4 gamma^2); t^2/2 at gamma = 0.
double tau_integral(double t, double gamma);

/// int_0^t tau^2 = (4 gamma t + 4 exp(-2 gamma t) - 3 - exp(-4 gamma t)) / (16 gamma^3).
double tau_squared_integral(double t, double gamma);

/// (1 - exp(-4 gamma t)) / (4 gamma), the r^2 decoherence coefficient of a0 up to D/hbar^2.
double tau_double_rate(double t, double gamma);

/// A complex Gaussian in x with fixed integral:
///   value(x) = weight / sqrt(2 pi var) * exp(-(x - center)^2 / (2 var)).
/// The rates let current() build the unique flux that vanishes at infinity and
/// satisfies d(value)/dt + d(current)/dx = 0.
struct GaussianForm {
  Complex weight{1.0, 0.0};
  Complex center{0.0, 0.0};
  Complex var{1.0, 0.0};
  Complex center_rate{0.0, 0.0};
  Complex var_rate{0.0, 0.0};

  Complex value(double x) const;
  Complex current(double x) const;
};

/// r-dependent exponent pieces of the single-packet density matrix.
struct KernelCoefficients {
  Complex a0;
  Complex a1;
};

/// Closed-form evolution of one (possibly stretched) Gaussian packet.
class EvolvedGaussian {
 public:
  EvolvedGaussian(const GaussianPacket& packet, const Environment& env, const ModelConstants& c);

  const GaussianPacket& packet() const { return packet_; }
  const Environment& environment() const { return env_; }
  const ModelConstants& constants() const { return c_; }
  double diffusion() const { return D_; }

  double tau(double t) const;
  double classical_center(double t) const;
  /// d x_t / dt = p0 exp(-2 gamma t)/m - g tau(t).
  double center_velocity(double t) const;
  double width(double t) const;
  double width_squared(double t) const;
  /// d(w_t^2)/dt.
  double width_squared_rate(double t) const;
  double width_rate(double t) const;

  KernelCoefficients kernel(double r, double t) const;
  Complex density_matrix(double R, double r, double t) const;
  /// Same, in the original coordinates rho(x, x').
  Complex density_matrix_xy(double x, double xp, double t) const;

  double probability_density(double x, double t) const;
  double probability_current(double x, double t) const;
  /// J / P. Throws StepError where P < 1e-300.
  double bohm_velocity(double x, double t) const;

  GaussianForm diagonal(double t) const;

 private:
  GaussianPacket packet_;
  Environment env_;
  ModelConstants c_;
  double D_;
};

/// Width of the eta = 0 packet with the same sigma0, called sigma_t.
double minimum_width(double sigma0, double t, const Environment& env, const ModelConstants& c);

/// Initial wave function psi_0(x) of a packet.
Complex initial_wavefunction(const GaussianPacket& p, double x, const ModelConstants& c);

/// <b|a> = int psi_a psi_b^* dx in closed form.
Complex initial_overlap(const GaussianPacket& a, const GaussianPacket& b, const ModelConstants& c);

/// Diagonal P_ab(x, t) of the evolved operator |psi_a><psi_b| for any two
/// packets (stretched or not, different widths, linear potential allowed).
GaussianForm cross_density(const GaussianPacket& a, const GaussianPacket& b, double t,
                           const Environment& env, const ModelConstants& c);

}  // namespace cldecohere
