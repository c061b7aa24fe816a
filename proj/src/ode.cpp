#include <cmath>

#include "cldecohere/numerics.hpp"

namespace cldecohere {

double rk4_step(const VelocityField& v, double x, double t, double h) {
  if (!(h > 0.0)) throw std::domain_error("rk4_step: step must be positive");
  auto eval = [&](double xx, double tt) {
    const double out = v(xx, tt);
    if (!std::isfinite(out)) throw StepError("rk4_step: non-finite velocity");
    return out;
  };
  const double k1 = eval(x, t);
  const double k2 = eval(x + 0.5 * h * k1, t + 0.5 * h);
  const double k3 = eval(x + 0.5 * h * k2, t + 0.5 * h);
  const double k4 = eval(x + h * k3, t + h);
  return x + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
}

Complex central_time_derivative(const DensityMatrixFunction& rho, const PhasePoint& p, double h) {
  return (rho(p.x, p.xp, p.t + h) - rho(p.x, p.xp, p.t - h)) / (2.0 * h);
}

Complex residual_cl(const DensityMatrixFunction& rho, const PhasePoint& p, double h,
                    const Environment& env, const ModelConstants& c) {
  const double D = diffusion_coefficient(env, c);
  const Complex i(0.0, 1.0);
  const double x = p.x;
  const double xp = p.xp;
  const double t = p.t;

  const Complex center = rho(x, xp, t);
  const Complex x_plus = rho(x + h, xp, t);
  const Complex x_minus = rho(x - h, xp, t);
  const Complex xp_plus = rho(x, xp + h, t);
  const Complex xp_minus = rho(x, xp - h, t);

  const Complex d_t = central_time_derivative(rho, p, h);
  const Complex d_xx = (x_plus - 2.0 * center + x_minus) / (h * h);
  const Complex d_xpxp = (xp_plus - 2.0 * center + xp_minus) / (h * h);
  const Complex d_x = (x_plus - x_minus) / (2.0 * h);
  const Complex d_xp = (xp_plus - xp_minus) / (2.0 * h);

  const double r = x - xp;
  const Complex kinetic = -c.hbar / (2.0 * c.mass * i) * (d_xx - d_xpxp);
  const Complex friction = -env.gamma * r * (d_x - d_xp);
  const Complex potential = c.mass * c.g * r / (i * c.hbar) * center;
  const Complex decoherence = -D / (c.hbar * c.hbar) * r * r * center;
  return d_t - (kinetic + friction + potential + decoherence);
}

}  // namespace cldecohere
