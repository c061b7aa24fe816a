#pragma once

#include <vector>

#include "cldecohere/gaussian.hpp"

namespace cldecohere {

/// Evolved cross density P_12(x, t) of psi (x0, p0, sigma0) and
/// phi (x0bar, p0bar, sigma0bar), both minimum-uncertainty packets; P_12 is
/// the diagonal of the evolved psi(x) phi*(x').
class PairKernel {
 public:
  PairKernel(const GaussianPacket& psi, const GaussianPacket& phi, const Environment& env,
             const ModelConstants& c);

  const GaussianPacket& psi() const { return psi_; }
  const GaussianPacket& phi() const { return phi_; }
  const Environment& environment() const { return env_; }
  const ModelConstants& constants() const { return c_; }

  Complex b0() const;
  Complex b1(double t) const;
  Complex b2(double t) const;
  /// s = int P_21 dx = conj(int P_12 dx), in closed form.
  Complex overlap() const;

  Complex density(double x, double t) const;
  Complex current(double x, double t) const;
  GaussianForm form(double t) const;

 private:
  GaussianPacket psi_;
  GaussianPacket phi_;
  Environment env_;
  ModelConstants c_;
  double D_;
};

/// Gamma_12 for the one-slit configuration (equal widths and centres).
/// Throws std::domain_error otherwise.
double gamma12(double t, const PairKernel& kernel);

/// Finite superposition sum_i c_i g_i of minimum-uncertainty packets.
struct OneParticleState {
  struct Term {
    Complex amplitude{1.0, 0.0};
    GaussianPacket packet;
  };
  std::vector<Term> terms;

  static OneParticleState gaussian(const GaussianPacket& p);
  /// Equal-weight pair at +x0 / -x0 with kicks +p0 / -p0 and width sigma0.
  static OneParticleState cat(double x0, double p0, double sigma0);

  void validate() const;
  /// <state|state> with the amplitudes as given.
  double norm_squared(const ModelConstants& c) const;
  /// Copy rescaled to unit norm.
  OneParticleState normalized(const ModelConstants& c) const;
};

/// Two identical (or distinguishable) particles in one-particle states psi
/// and phi. Both states are normalized on construction.
class TwoParticleSystem {
 public:
  TwoParticleSystem(const OneParticleState& psi, const OneParticleState& phi, Statistics stats,
                    const Environment& env, const ModelConstants& c);

  Statistics statistics() const { return stats_; }
  /// s = int P_21 dx, time independent.
  Complex overlap() const { return s_; }
  /// N_pm^2 = 1 / (2 (1 pm |s|^2)); 1/2 for Maxwell-Boltzmann.
  double norm_squared() const;

  /// P_11, P_22 and P_12 at (x, t).
  double p11(double x, double t) const;
  double p22(double x, double t) const;
  Complex p12(double x, double t) const;
  double j11(double x, double t) const;
  double j22(double x, double t) const;
  Complex j12(double x, double t) const;

  double joint_density(double x1, double x2, double t) const;
  double single_particle_density(double x, double t) const;
  /// N^2 [J_11 + J_22 pm 2 Re(J_12 s)].
  double single_particle_current(double x, double t) const;
  /// |dP_sp/dt + dJ_sp/dx| by central differences with step h.
  double continuity_residual(double x, double t, double h) const;

  /// sqrt(<(x1 - x2)^2>) under the joint density, from closed-form moments.
  double separation_rms(double t) const;
  /// sqrt(<x^2>) under the single-particle density.
  double position_rms(double t) const;

 private:
  struct Moments {
    Complex m0, m1, m2;
  };
  Moments moments(const OneParticleState& left, const OneParticleState& right, double t) const;
  Complex bilinear(const OneParticleState& left, const OneParticleState& right, double x, double t,
                   bool current) const;
  double sign() const;

  OneParticleState psi_;
  OneParticleState phi_;
  Statistics stats_;
  Environment env_;
  ModelConstants c_;
  Complex s_;
};

}  // namespace cldecohere
