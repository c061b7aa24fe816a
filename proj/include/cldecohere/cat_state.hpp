#pragma once

#include <cmath>
#include <vector>

#include "cldecohere/gaussian.hpp"

namespace cldecohere {

/// Normalized superposition N (psi_a + psi_b) of two Gaussian packets.
struct CatState {
  GaussianPacket a;
  GaussianPacket b;

  /// Packets at +x0 / -x0 with kicks +p0 / -p0, common sigma0 and eta.
  static CatState symmetric(double x0, double p0, double sigma0, double eta = 0.0);

  void validate() const;
  /// Mirror-image pair with equal widths and stretching.
  bool is_symmetric() const;
  /// (2 + 2 Re <b|a>)^(-1/2).
  double norm(const ModelConstants& c) const;
};

/// Full interference density. For symmetric eta = 0 pairs the cross term uses
/// the closed-form (Gamma_m, Theta_m); otherwise the evolved cross kernel.
double cat_density(const CatState& cat, double x, double t, const Environment& env,
                   const ModelConstants& c);

/// Density assembled purely from evolved kernels, N^2 (P_aa + P_bb + 2 Re P_ab).
double cat_density_kernel(const CatState& cat, double x, double t, const Environment& env,
                          const ModelConstants& c);

/// 2 sqrt(P_aa P_bb) exp(Gamma_m) cos(Theta_m), without the N^2 factor.
double cat_cross_term_closed(const CatState& cat, double x, double t, const Environment& env,
                             const ModelConstants& c);

/// Probability current of the superposition from the kernel currents.
double cat_current(const CatState& cat, double x, double t, const Environment& env,
                   const ModelConstants& c);

/// Current as -int_{x_lo}^{x} dP/dt dx', with dP/dt by central differences
/// (step h) and x_lo where the density is below 1e-14. Slow; used as a check.
double cat_current_cumulative(const CatState& cat, double x, double t, const Environment& env,
                              const ModelConstants& c, double h = 1e-4);

/// Gamma_m(t) for the symmetric minimum-uncertainty pair. No g dependence.
double gamma_min(double t, const CatState& cat, const Environment& env, const ModelConstants& c);

struct PhaseParameters {
  double alpha = 0.0;    ///< fringe shift from the constant force
  double beta = 0.0;     ///< phase slope numerator
  double sigma_t2 = 1.0; ///< sigma_t^2 at the same time
};

/// alpha_m, beta_m and sigma_t^2. The sign of the tau term in beta_m makes
/// Theta_m the phase of P_ba(x, t).
PhaseParameters phase_parameters_min(double t, const CatState& cat, const Environment& env,
                                     const ModelConstants& c);

/// Theta_m(x, t) = beta_m (x - alpha_m) / sigma_t^2.
double phase_min(double x, double t, const CatState& cat, const Environment& env,
                 const ModelConstants& c);

/// Exact Gamma(t) for the symmetric stretched pair in free space:
///   -C(eta) (1 - w_t^2|_{D=0} / w_t^2) = -C(eta) (2 D int tau^2 / m^2) / w_t^2,
/// C(eta) = x0^2/(2 sigma0^2) - 2 p0 x0 eta/hbar + 2 p0^2 (1+eta^2) sigma0^2/hbar^2.
double gamma_stretched(double t, const CatState& cat, const Environment& env,
                       const ModelConstants& c);

/// The Gamma_0 + eta(...) + f(t) form as commonly printed. Agrees with
/// gamma_stretched when eta = 0 or p0 = 0; kept for comparison only.
double gamma_stretched_printed(double t, const CatState& cat, const Environment& env,
                               const ModelConstants& c);

/// Gamma(t) for motionless (p0 = 0) stretched packets.
double gamma_motionless(double t, const CatState& cat, const Environment& env,
                        const ModelConstants& c);

/// log(|P_ab| / sqrt(P_aa P_bb)) evaluated from the kernels at x.
double gamma_from_kernels(double x, double t, const CatState& cat, const Environment& env,
                          const ModelConstants& c);

/// Rational short-time approximation of Gamma for gamma t << 1.
double gamma_zero_dissipation(double t, const CatState& cat, const Environment& env,
                              const ModelConstants& c);

/// tau_D = 3 hbar^2 / (2 m gamma kT d^2). Throws for d = 0 or D = 0.
double decoherence_time(const Environment& env, double separation, const ModelConstants& c);

inline double attenuation(double gamma_value) { return std::exp(gamma_value); }

struct DecoherenceCurve {
  std::vector<double> times;
  std::vector<double> gamma_values;
  std::vector<double> attenuation;
  std::vector<double> beta;
  std::vector<double> alpha;
};

/// Gamma, a, beta and alpha sampled on the given times. Uses gamma_min for
/// eta = 0 and gamma_stretched otherwise; beta is the exact phase slope times w_t^2.
DecoherenceCurve decoherence_curve(const CatState& cat, const std::vector<double>& times,
                                   const Environment& env, const ModelConstants& c);

}  // namespace cldecohere
