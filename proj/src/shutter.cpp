#include "cldecohere/shutter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cldecohere {

void ShutterConfig::validate() const {
  env.validate();
  if (!(k > 0.0) || !std::isfinite(k)) throw std::domain_error("shutter: k must be positive");
  if (!(r_min < 0.0) || !std::isfinite(r_min)) throw std::domain_error("shutter: r_min must be negative");
  if (!(tol > 0.0)) throw std::domain_error("shutter: tol must be positive");
}

std::vector<std::string> shutter_warnings(const ShutterConfig& cfg, double t_max) {
  std::vector<std::string> out;
  if (cfg.env.gamma * t_max > 0.05) {
    std::ostringstream msg;
    msg << "gamma * t_max = " << cfg.env.gamma * t_max
        << " exceeds 0.05; friction is not negligible on this window";
    out.push_back(msg.str());
  }
  return out;
}

Complex shutter_propagator(double x, double y, double t, double xp, double yp, double D,
                           const ModelConstants& c) {
  if (!(t > 0.0)) throw std::domain_error("shutter_propagator: t must be positive");
  const double m = c.mass;
  const double hb = c.hbar;
  const double u = x - y;
  const double v = xp - yp;
  const double phase = m / (2.0 * hb * t) * ((x - xp) * (x - xp) - (y - yp) * (y - yp));
  const double damping = D * t / (3.0 * hb * hb) * (u * u + u * v + v * v);
  return m / (2.0 * std::numbers::pi * hb * t) * std::exp(Complex(-damping, phase));
}

double shutter_integrand(double x, double t, double r_prime, double k, double D,
                         const ModelConstants& c) {
  if (!(t > 0.0)) throw std::domain_error("shutter_integrand: t must be positive");
  if (!(D >= 0.0)) throw std::domain_error("shutter_integrand: D must be non-negative");
  const double hb = c.hbar;
  const double m = c.mass;
  const double q = (hb * k * t + m * (r_prime - x)) / (hb * t);
  const double half_length = -2.0 * r_prime;  // integration runs over [-L, L]
  if (D == 0.0) {
    const double arg = half_length * q;
    if (std::abs(arg) < 1e-4) {
      // 2 sin(L q) / q = 2 L (1 - (Lq)^2/6 + (Lq)^4/120)
      const double a2 = arg * arg;
      return 2.0 * half_length * (1.0 - a2 / 6.0 + a2 * a2 / 120.0);
    }
    return 2.0 * std::sin(arg) / q;
  }
  const double sqrt_a = std::sqrt(D * t / 3.0) / hb;
  const Complex z(sqrt_a * half_length, q / (2.0 * sqrt_a));
  // sqrt(pi / a) Re[exp(-Y^2) erf(X + iY)]
  return std::sqrt(std::numbers::pi) / sqrt_a * erf_damped(z).real();
}

double shutter_density_quadrature(double x, double t, const ShutterConfig& cfg,
                                  const ModelConstants& c) {
  cfg.validate();
  if (!(t > 0.0)) throw std::domain_error("shutter_density: t must be positive");
  const double D = diffusion_coefficient(cfg.env, c);
  const double hb = c.hbar;
  const double m = c.mass;
  const double prefactor = m / (2.0 * std::numbers::pi * hb * t);

  // Breakpoints: the stationary point q = 0, a few Gaussian widths around it
  // and the radii where the exp(-X^2) envelope has decayed by e^-j.
  std::vector<double> cuts{cfg.r_min, 0.0};
  const double r_stat = x - hb * cfg.k * t / m;
  cuts.push_back(r_stat);
  if (D > 0.0) {
    const double width_y = std::sqrt(D * t * t * t / 3.0) / m;  // Y changes by 1 over this
    for (int j = 1; j <= 8; ++j) {
      cuts.push_back(r_stat - j * width_y);
      cuts.push_back(r_stat + j * width_y);
    }
    const double x_unit = hb / (2.0 * std::sqrt(D * t / 3.0));  // X = 1 at R' = -x_unit
    for (int j = 1; j <= 8; ++j) cuts.push_back(-x_unit * std::sqrt(static_cast<double>(j)));
  }
  // keep panels short compared with the local oscillation, roughly 4 m R'/(hbar t)
  for (double r = -1.0; r > cfg.r_min; r *= 1.5) cuts.push_back(r);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                            [&](double v) { return v < cfg.r_min || v > 0.0 || !std::isfinite(v); }),
             cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const RealFunction f = [&](double r) { return shutter_integrand(x, t, r, cfg.k, D, c); };
  QuadratureOptions opts;
  opts.abs_tol = cfg.tol / prefactor / static_cast<double>(cuts.size());
  opts.rel_tol = 1e-12;
  double sum = 0.0;
  double err = 0.0;
  std::size_t evals = 0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    try {
      const QuadratureResult r = integrate_adaptive(f, cuts[i - 1], cuts[i], opts);
      sum += r.value;
      err += r.error_estimate;
      evals += r.evaluations;
    } catch (const ConvergenceError& e) {
      const QuadratureResult& p = e.partial();
      throw ConvergenceError("shutter_density: quadrature did not converge",
                             {prefactor * (sum + p.value), prefactor * (err + p.error_estimate),
                              evals + p.evaluations});
    }
  }
  return prefactor * sum;
}

double shutter_density(double x, double t, const ShutterConfig& cfg, const ModelConstants& c) {
  cfg.validate();
  if (diffusion_coefficient(cfg.env, c) == 0.0) return shutter_density_zeroT(x, t, cfg.k, c);
  return shutter_density_quadrature(x, t, cfg, c);
}

double shutter_density_zeroT(double x, double t, double k, const ModelConstants& c) {
  if (!(t > 0.0)) throw std::domain_error("shutter_density_zeroT: t must be positive");
  const double xi = std::sqrt(c.mass / (std::numbers::pi * c.hbar * t)) * (c.hbar * k * t / c.mass - x);
  const FresnelPair cs = fresnel(xi);
  return 0.5 * (cs.c + 0.5) * (cs.c + 0.5) + 0.5 * (cs.s + 0.5) * (cs.s + 0.5);
}

double shutter_density_classical(double x, double t, double k, const ModelConstants& c) {
  const double front = c.hbar * k * t / c.mass;
  if (x < front) return 1.0;
  if (x > front) return 0.0;
  return 0.5;
}

}  // namespace cldecohere
