#include "cldecohere/cat_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cldecohere {

namespace {

void require_symmetric(const CatState& cat, bool minimum_uncertainty, const char* who) {
  cat.validate();
  if (!cat.is_symmetric())
    throw std::domain_error(std::string(who) + ": requires the symmetric pair (+x0,+p0), (-x0,-p0)");
  if (minimum_uncertainty && cat.a.eta != 0.0)
    throw std::domain_error(std::string(who) + ": requires eta = 0");
}

}  // namespace

CatState CatState::symmetric(double x0, double p0, double sigma0, double eta) {
  CatState cat;
  cat.a = {x0, p0, sigma0, eta};
  cat.b = {-x0, -p0, sigma0, eta};
  return cat;
}

void CatState::validate() const {
  a.validate();
  b.validate();
}

bool CatState::is_symmetric() const {
  return a.x0 == -b.x0 && a.p0 == -b.p0 && a.sigma0 == b.sigma0 && a.eta == b.eta;
}

double CatState::norm(const ModelConstants& c) const {
  const double s = initial_overlap(a, b, c).real();
  return 1.0 / std::sqrt(2.0 + 2.0 * s);
}

double cat_cross_term_closed(const CatState& cat, double x, double t, const Environment& env,
                             const ModelConstants& c) {
  require_symmetric(cat, true, "cat_cross_term_closed");
  const EvolvedGaussian ga(cat.a, env, c);
  const EvolvedGaussian gb(cat.b, env, c);
  const double envelope = std::sqrt(ga.probability_density(x, t) * gb.probability_density(x, t));
  return 2.0 * envelope * std::exp(gamma_min(t, cat, env, c)) * std::cos(phase_min(x, t, cat, env, c));
}

double cat_density_kernel(const CatState& cat, double x, double t, const Environment& env,
                          const ModelConstants& c) {
  cat.validate();
  const double n = cat.norm(c);
  const double paa = EvolvedGaussian(cat.a, env, c).probability_density(x, t);
  const double pbb = EvolvedGaussian(cat.b, env, c).probability_density(x, t);
  const Complex pab = cross_density(cat.a, cat.b, t, env, c).value(x);
  return n * n * (paa + pbb + 2.0 * pab.real());
}

double cat_density(const CatState& cat, double x, double t, const Environment& env,
                   const ModelConstants& c) {
  cat.validate();
  if (!cat.is_symmetric() || cat.a.eta != 0.0) return cat_density_kernel(cat, x, t, env, c);
  const double n = cat.norm(c);
  const double paa = EvolvedGaussian(cat.a, env, c).probability_density(x, t);
  const double pbb = EvolvedGaussian(cat.b, env, c).probability_density(x, t);
  return n * n * (paa + pbb + cat_cross_term_closed(cat, x, t, env, c));
}

double cat_current(const CatState& cat, double x, double t, const Environment& env,
                   const ModelConstants& c) {
  cat.validate();
  const double n = cat.norm(c);
  const double jaa = EvolvedGaussian(cat.a, env, c).probability_current(x, t);
  const double jbb = EvolvedGaussian(cat.b, env, c).probability_current(x, t);
  const Complex jab = cross_density(cat.a, cat.b, t, env, c).current(x);
  return n * n * (jaa + jbb + 2.0 * jab.real());
}

double cat_current_cumulative(const CatState& cat, double x, double t, const Environment& env,
                              const ModelConstants& c, double h) {
  cat.validate();
  if (!(h > 0.0) || t - h < 0.0) throw std::domain_error("cat_current_cumulative: need t >= h > 0");
  const EvolvedGaussian ga(cat.a, env, c);
  const EvolvedGaussian gb(cat.b, env, c);
  // walk left from the leftmost centre until the density is negligible
  const double wmax = std::max(ga.width(t), gb.width(t));
  double x_lo = std::min(ga.classical_center(t), gb.classical_center(t));
  while (cat_density_kernel(cat, x_lo, t, env, c) >= 1e-14) x_lo -= 0.5 * wmax;
  if (x <= x_lo) return 0.0;
  const RealFunction dpdt = [&](double xp) {
    return (cat_density_kernel(cat, xp, t + h, env, c) - cat_density_kernel(cat, xp, t - h, env, c)) /
           (2.0 * h);
  };
  QuadratureOptions opts;
  opts.abs_tol = 1e-12;
  opts.rel_tol = 1e-10;
  return -integrate_adaptive(dpdt, x_lo, x, opts).value;
}

double gamma_min(double t, const CatState& cat, const Environment& env, const ModelConstants& c) {
  require_symmetric(cat, true, "gamma_min");
  const double s2 = cat.a.sigma0 * cat.a.sigma0;
  const double x0 = cat.a.x0;
  const double p0 = cat.a.p0;
  const double hb = c.hbar;
  const double m = c.mass;
  const EvolvedGaussian g(cat.a, env, c);
  const double sigma_t2 = g.width_squared(t);
  const double amplitude = x0 * x0 / (2.0 * s2) + 2.0 * p0 * p0 * s2 / (hb * hb);
  // 1 - (sigma0^2 / sigma_t^2)[1 + hbar^2 tau^2 / (4 m^2 sigma0^4)] is the diffusive share of
  // sigma_t^2; writing it that way keeps Gamma exactly zero when D = 0 or t = 0.
  return -amplitude * (2.0 * g.diffusion() * tau_squared_integral(t, env.gamma) / (m * m)) / sigma_t2;
}

PhaseParameters phase_parameters_min(double t, const CatState& cat, const Environment& env,
                                     const ModelConstants& c) {
  require_symmetric(cat, true, "phase_parameters_min");
  const double s2 = cat.a.sigma0 * cat.a.sigma0;
  const double tt = tau(t, env.gamma);
  PhaseParameters out;
  out.alpha = -c.g * tau_integral(t, env.gamma);
  out.beta = cat.a.x0 * c.hbar * tt / (2.0 * c.mass * s2) - 2.0 * cat.a.p0 * s2 / c.hbar;
  out.sigma_t2 = EvolvedGaussian(cat.a, env, c).width_squared(t);
  return out;
}

double phase_min(double x, double t, const CatState& cat, const Environment& env,
                 const ModelConstants& c) {
  const PhaseParameters p = phase_parameters_min(t, cat, env, c);
  return p.beta * (x - p.alpha) / p.sigma_t2;
}

double gamma_stretched(double t, const CatState& cat, const Environment& env,
                       const ModelConstants& c) {
  require_symmetric(cat, false, "gamma_stretched");
  if (c.g != 0.0) throw std::domain_error("gamma_stretched: free space only (g = 0)");
  const double s2 = cat.a.sigma0 * cat.a.sigma0;
  const double x0 = cat.a.x0;
  const double p0 = cat.a.p0;
  const double eta = cat.a.eta;
  const double hb = c.hbar;
  const double amplitude = x0 * x0 / (2.0 * s2) - 2.0 * p0 * x0 * eta / hb +
                           2.0 * p0 * p0 * (1.0 + eta * eta) * s2 / (hb * hb);
  const EvolvedGaussian g(cat.a, env, c);
  const double w2 = g.width_squared(t);
  return -amplitude * (2.0 * g.diffusion() * tau_squared_integral(t, env.gamma) / (c.mass * c.mass)) / w2;
}

double gamma_stretched_printed(double t, const CatState& cat, const Environment& env,
                               const ModelConstants& c) {
  require_symmetric(cat, false, "gamma_stretched_printed");
  const double s2 = cat.a.sigma0 * cat.a.sigma0;
  const double x0 = cat.a.x0;
  const double p0 = cat.a.p0;
  const double eta = cat.a.eta;
  const double hb = c.hbar;
  const double m = c.mass;
  const double tt = tau(t, env.gamma);
  const double w2 = EvolvedGaussian(cat.a, env, c).width_squared(t);
  const double gamma0 = -(x0 * x0 / (2.0 * s2) + 2.0 * p0 * p0 * s2 / (hb * hb)) *
                        (1.0 - s2 / w2 * (1.0 + hb * hb * tt * tt / (4.0 * m * m * s2 * s2)));
  const double mx = m * x0 + p0 * tt;
  const double f = hb * hb * hb * x0 * mx * tt +
                   eta * hb * hb * (m * m * x0 * x0 + 4.0 * m * x0 * p0 * tt + p0 * p0 * tt * tt) * s2 +
                   4.0 * (1.0 + eta * eta) * hb * m * p0 * mx * s2 * s2 +
                   4.0 * eta * (2.0 + eta * eta) * m * m * p0 * p0 * s2 * s2 * s2;
  return gamma0 + eta * (-2.0 * p0 * (hb * x0 + eta * p0 * s2) / (hb * hb) +
                         f / (2.0 * hb * hb * m * m * s2 * w2));
}

double gamma_motionless(double t, const CatState& cat, const Environment& env,
                        const ModelConstants& c) {
  require_symmetric(cat, false, "gamma_motionless");
  if (cat.a.p0 != 0.0) throw std::domain_error("gamma_motionless: requires p0 = 0");
  const double s2 = cat.a.sigma0 * cat.a.sigma0;
  const double x0 = cat.a.x0;
  const double eta = cat.a.eta;
  const double hb = c.hbar;
  const double m = c.mass;
  const double tt = tau(t, env.gamma);
  const double w2 = EvolvedGaussian(cat.a, env, c).width_squared(t);
  return -x0 * x0 / (2.0 * s2) * (1.0 - s2 / w2 * (1.0 + hb * hb * tt * tt / (4.0 * m * m * s2 * s2))) +
         x0 * x0 / (2.0 * w2) * (eta * eta + eta * hb * tt / (m * s2));
}

double gamma_from_kernels(double x, double t, const CatState& cat, const Environment& env,
                          const ModelConstants& c) {
  cat.validate();
  const double paa = EvolvedGaussian(cat.a, env, c).probability_density(x, t);
  const double pbb = EvolvedGaussian(cat.b, env, c).probability_density(x, t);
  const Complex pab = cross_density(cat.a, cat.b, t, env, c).value(x);
  return std::log(std::abs(pab) / std::sqrt(paa * pbb));
}

double gamma_zero_dissipation(double t, const CatState& cat, const Environment& env,
                              const ModelConstants& c) {
  require_symmetric(cat, false, "gamma_zero_dissipation");
  const double D = diffusion_coefficient(env, c);
  const double s2 = cat.a.sigma0 * cat.a.sigma0;
  const double x0 = cat.a.x0;
  const double eta = cat.a.eta;
  const double hb = c.hbar;
  const double m = c.mass;
  const double t3 = t * t * t;
  return -4.0 * D * x0 * x0 * t3 /
         (12.0 * m * m * s2 * s2 * (1.0 + eta * eta) + 12.0 * m * hb * eta * s2 * t +
          3.0 * hb * hb * t * t + 8.0 * D * s2 * t3);
}

double decoherence_time(const Environment& env, double separation, const ModelConstants& c) {
  env.validate();
  const double denom = 2.0 * c.mass * env.gamma * env.kT * separation * separation;
  if (!(denom > 0.0)) throw std::domain_error("decoherence_time: needs gamma, kT and d nonzero");
  return 3.0 * c.hbar * c.hbar / denom;
}

DecoherenceCurve decoherence_curve(const CatState& cat, const std::vector<double>& times,
                                   const Environment& env, const ModelConstants& c) {
  require_symmetric(cat, false, "decoherence_curve");
  DecoherenceCurve out;
  out.times = times;
  for (double t : times) {
    const double g = cat.a.eta == 0.0 ? gamma_min(t, cat, env, c) : gamma_stretched(t, cat, env, c);
    out.gamma_values.push_back(g);
    out.attenuation.push_back(attenuation(g));
    // P_ba has real variance w_t^2 for the mirror pair, so Im(centre) is beta.
    const GaussianForm ba = cross_density(cat.b, cat.a, t, env, c);
    out.beta.push_back(ba.center.imag());
    out.alpha.push_back(ba.center.real());
  }
  return out;
}

}  // namespace cldecohere
