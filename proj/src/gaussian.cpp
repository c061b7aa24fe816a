#include "cldecohere/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cldecohere {

namespace {

constexpr double kSeriesCutoff = 0.5;  // in u = 2 gamma t
constexpr int kSeriesTerms = 30;

// phi1(u) = (1 - e^-u)/u = sum (-u)^n / (n+1)!
double phi1(double u) {
  if (std::abs(u) < kSeriesCutoff) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < kSeriesTerms; ++n) {
      term *= -u / (n + 1);
      sum += term;
    }
    return sum;
  }
  return -std::expm1(-u) / u;
}

// phi2(u) = (e^-u - 1 + u)/u^2 = sum (-u)^n / (n+2)!
double phi2(double u) {
  if (std::abs(u) < kSeriesCutoff) {
    double term = 0.5;
    double sum = 0.5;
    for (int n = 1; n < kSeriesTerms; ++n) {
      term *= -u / (n + 2);
      sum += term;
    }
    return sum;
  }
  return (std::expm1(-u) + u) / (u * u);
}

// phi3(u) = (2u + 4e^-u - 3 - e^-2u)/u^3 = sum_{n>=3} (4(-1)^n - (-2)^n)/n! u^(n-3)
double phi3(double u) {
  if (std::abs(u) < kSeriesCutoff) {
    double pow_u = 1.0;      // u^(n-3)
    double inv_fact = 1.0 / 6.0;
    double sign = -1.0;      // (-1)^n at n = 3
    double pow_m2 = -8.0;    // (-2)^n at n = 3
    double sum = 0.0;
    for (int n = 3; n < 3 + kSeriesTerms; ++n) {
      sum += (4.0 * sign - pow_m2) * inv_fact * pow_u;
      pow_u *= u;
      inv_fact /= (n + 1);
      sign = -sign;
      pow_m2 *= -2.0;
    }
    return sum;
  }
  return (2.0 * u + 4.0 * std::expm1(-u) - std::expm1(-2.0 * u)) / (u * u * u);
}

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::domain_error("time must be finite and non-negative");
}

}  // namespace

double tau(double t, double gamma) { return t * phi1(2.0 * gamma * t); }

double tau_integral(double t, double gamma) { return t * t * phi2(2.0 * gamma * t); }

double tau_squared_integral(double t, double gamma) {
  return 0.5 * t * t * t * phi3(2.0 * gamma * t);
}

double tau_double_rate(double t, double gamma) { return t * phi1(4.0 * gamma * t); }

Complex GaussianForm::value(double x) const {
  const Complex d = x - center;
  return weight / std::sqrt(2.0 * std::numbers::pi * var) * std::exp(-d * d / (2.0 * var));
}

Complex GaussianForm::current(double x) const {
  return value(x) * (center_rate + var_rate * (x - center) / (2.0 * var));
}

EvolvedGaussian::EvolvedGaussian(const GaussianPacket& packet, const Environment& env,
                                 const ModelConstants& c)
    : packet_(packet), env_(env), c_(c) {
  packet_.validate();
  c_.validate();
  D_ = diffusion_coefficient(env_, c_);
}

double EvolvedGaussian::tau(double t) const {
  check_time(t);
  return cldecohere::tau(t, env_.gamma);
}

double EvolvedGaussian::classical_center(double t) const {
  check_time(t);
  return packet_.x0 + packet_.p0 / c_.mass * tau(t) - c_.g * tau_integral(t, env_.gamma);
}

double EvolvedGaussian::center_velocity(double t) const {
  return packet_.p0 / c_.mass * std::exp(-2.0 * env_.gamma * t) - c_.g * tau(t);
}

double EvolvedGaussian::width_squared(double t) const {
  const double s2 = packet_.sigma0 * packet_.sigma0;
  const double eta = packet_.eta;
  const double tt = tau(t);
  const double m = c_.mass;
  const double w2 = s2 * (1.0 + eta * eta) + c_.hbar * c_.hbar * tt * tt / (4.0 * m * m * s2) +
                    2.0 * D_ * tau_squared_integral(t, env_.gamma) / (m * m) +
                    eta * c_.hbar * tt / m;
  if (!(w2 > 0.0)) throw std::logic_error("width: non-positive w_t^2");
  return w2;
}

double EvolvedGaussian::width(double t) const { return std::sqrt(width_squared(t)); }

double EvolvedGaussian::width_squared_rate(double t) const {
  const double s2 = packet_.sigma0 * packet_.sigma0;
  const double tt = tau(t);
  const double tt_rate = std::exp(-2.0 * env_.gamma * t);
  const double m = c_.mass;
  return c_.hbar * c_.hbar * tt * tt_rate / (2.0 * m * m * s2) + 2.0 * D_ * tt * tt / (m * m) +
         packet_.eta * c_.hbar * tt_rate / m;
}

double EvolvedGaussian::width_rate(double t) const {
  return width_squared_rate(t) / (2.0 * width(t));
}

KernelCoefficients EvolvedGaussian::kernel(double r, double t) const {
  const double s2 = packet_.sigma0 * packet_.sigma0;
  const double e2 = std::exp(-2.0 * env_.gamma * t);
  const double tt = tau(t);
  const double hb = c_.hbar;
  const double m = c_.mass;
  const double quad = e2 * e2 / (8.0 * s2) + tau_double_rate(t, env_.gamma) * D_ / (hb * hb);
  const double lin = packet_.p0 / hb * e2 - m * c_.g / hb * tt;
  const double shear = hb / (4.0 * m * s2) * e2 * tt + D_ / (m * hb) * tt * tt + 0.5 * packet_.eta * e2;
  return {Complex(-quad * r * r, lin * r), Complex(classical_center(t), shear * r)};
}

Complex EvolvedGaussian::density_matrix(double R, double r, double t) const {
  const KernelCoefficients k = kernel(r, t);
  const double w2 = width_squared(t);
  const Complex d = R - k.a1;
  return std::exp(k.a0 - d * d / (2.0 * w2)) / std::sqrt(2.0 * std::numbers::pi * w2);
}

Complex EvolvedGaussian::density_matrix_xy(double x, double xp, double t) const {
  return density_matrix(0.5 * (x + xp), x - xp, t);
}

double EvolvedGaussian::probability_density(double x, double t) const {
  const double w2 = width_squared(t);
  const double d = x - classical_center(t);
  return std::exp(-d * d / (2.0 * w2)) / std::sqrt(2.0 * std::numbers::pi * w2);
}

double EvolvedGaussian::bohm_velocity(double x, double t) const {
  if (!(probability_density(x, t) >= 1e-300)) throw StepError("bohm_velocity: density underflow");
  return center_velocity(t) +
         (x - classical_center(t)) * width_squared_rate(t) / (2.0 * width_squared(t));
}

double EvolvedGaussian::probability_current(double x, double t) const {
  return (center_velocity(t) +
          (x - classical_center(t)) * width_squared_rate(t) / (2.0 * width_squared(t))) *
         probability_density(x, t);
}

GaussianForm EvolvedGaussian::diagonal(double t) const {
  GaussianForm f;
  f.weight = 1.0;
  f.center = classical_center(t);
  f.var = width_squared(t);
  f.center_rate = center_velocity(t);
  f.var_rate = width_squared_rate(t);
  return f;
}

double minimum_width(double sigma0, double t, const Environment& env, const ModelConstants& c) {
  GaussianPacket p;
  p.sigma0 = sigma0;
  return EvolvedGaussian(p, env, c).width(t);
}

namespace {

// exp(-(x-x0)^2 * alpha) with alpha = 1/(4 sigma0^2 (1 + i eta)), and its normalization.
Complex packet_alpha(const GaussianPacket& p) {
  return 1.0 / (4.0 * p.sigma0 * p.sigma0 * Complex(1.0, p.eta));
}

Complex packet_norm(const GaussianPacket& p) {
  const Complex s = Complex(1.0, p.eta);
  return std::pow(2.0 * std::numbers::pi * p.sigma0 * p.sigma0 * s * s, -0.25);
}

}  // namespace

Complex initial_wavefunction(const GaussianPacket& p, double x, const ModelConstants& c) {
  const double d = x - p.x0;
  return packet_norm(p) * std::exp(-packet_alpha(p) * d * d + Complex(0.0, p.p0 * x / c.hbar));
}

Complex initial_overlap(const GaussianPacket& a, const GaussianPacket& b, const ModelConstants& c) {
  const Complex aa = packet_alpha(a);
  const Complex ab = std::conj(packet_alpha(b));
  const Complex A = aa + ab;
  const Complex B = 2.0 * aa * a.x0 + 2.0 * ab * b.x0 + Complex(0.0, (a.p0 - b.p0) / c.hbar);
  const Complex C = -aa * a.x0 * a.x0 - ab * b.x0 * b.x0;
  return packet_norm(a) * std::conj(packet_norm(b)) * std::sqrt(std::numbers::pi / A) *
         std::exp(B * B / (4.0 * A) + C);
}

// Fourier transform in R turns the master equation into first-order transport
// in r. Undoing it leaves a 2x2 complex Gaussian integral over (k, R); the
// Schur complement in R gives the x-dependence directly.
GaussianForm cross_density(const GaussianPacket& a, const GaussianPacket& b, double t,
                           const Environment& env, const ModelConstants& c) {
  a.validate();
  b.validate();
  check_time(t);
  const double D = diffusion_coefficient(env, c);
  const double hb = c.hbar;
  const double m = c.mass;
  const double tt = tau(t, env.gamma);
  const double tt_rate = std::exp(-2.0 * env.gamma * t);
  const double lambda = hb * tt / (2.0 * m);
  const double lambda_rate = hb * tt_rate / (2.0 * m);
  const double beta = D * tau_squared_integral(t, env.gamma) / (m * m);
  const double beta_rate = D * tt * tt / (m * m);
  const Complex i(0.0, 1.0);

  const Complex aa = packet_alpha(a);
  const Complex ab = std::conj(packet_alpha(b));
  const Complex m_rr = 2.0 * (aa + ab);
  const Complex m_kr = 2.0 * lambda * (ab - aa) + i;
  const Complex m_kk = 2.0 * lambda * lambda * (aa + ab) + 2.0 * beta;
  const Complex b_r = 2.0 * aa * a.x0 + 2.0 * ab * b.x0 + i * (a.p0 - b.p0) / hb;
  const Complex k_unit = -2.0 * aa * a.x0 + 2.0 * ab * b.x0 - i * (a.p0 + b.p0) / hb;

  GaussianForm f;
  f.weight = initial_overlap(a, b, c);
  f.var = m_kk - m_kr * m_kr / m_rr;
  f.var_rate = 4.0 * lambda * lambda_rate * (aa + ab) + 2.0 * beta_rate -
               4.0 * m_kr * lambda_rate * (ab - aa) / m_rr;
  const Complex slope = k_unit - 2.0 * (ab - aa) * b_r / m_rr;
  f.center = i * (lambda * slope - i * b_r / m_rr) - c.g * tau_integral(t, env.gamma);
  f.center_rate = i * lambda_rate * slope - c.g * tt;
  return f;
}

}  // namespace cldecohere
