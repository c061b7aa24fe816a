#include "cldecohere/identical.hpp"

#include <cmath>
#include <stdexcept>

namespace cldecohere {

namespace {

void require_minimum_uncertainty(const GaussianPacket& p, const char* who) {
  p.validate();
  if (p.eta != 0.0) throw std::domain_error(std::string(who) + ": packets must have eta = 0");
}

}  // namespace

PairKernel::PairKernel(const GaussianPacket& psi, const GaussianPacket& phi, const Environment& env,
                       const ModelConstants& c)
    : psi_(psi), phi_(phi), env_(env), c_(c) {
  require_minimum_uncertainty(psi_, "PairKernel");
  require_minimum_uncertainty(phi_, "PairKernel");
  c_.validate();
  D_ = diffusion_coefficient(env_, c_);
}

Complex PairKernel::b0() const {
  const double hb = c_.hbar;
  const double s2 = psi_.sigma0 * psi_.sigma0;
  const double sb2 = phi_.sigma0 * phi_.sigma0;
  const double dx = psi_.x0 - phi_.x0;
  const double dp = psi_.p0 - phi_.p0;
  const Complex num(hb * hb * dx * dx + 4.0 * dp * dp * s2 * sb2,
                    -4.0 * hb * dp * (psi_.x0 * sb2 + phi_.x0 * s2));
  return -num / (4.0 * hb * hb * (s2 + sb2));
}

Complex PairKernel::b1(double t) const {
  const double hb = c_.hbar;
  const double m = c_.mass;
  const double s2 = psi_.sigma0 * psi_.sigma0;
  const double sb2 = phi_.sigma0 * phi_.sigma0;
  const double S = s2 + sb2;
  const double tt = tau(t, env_.gamma);
  const double re = (psi_.x0 * sb2 + phi_.x0 * s2) / S + (phi_.p0 * sb2 + psi_.p0 * s2) / (m * S) * tt;
  const double im = hb * tt / (2.0 * m) * (psi_.x0 - phi_.x0) / S +
                    2.0 * (phi_.p0 - psi_.p0) * s2 * sb2 / (hb * S);
  return {re - c_.g * tau_integral(t, env_.gamma), -im};
}

Complex PairKernel::b2(double t) const {
  const double hb = c_.hbar;
  const double m = c_.mass;
  const double s2 = psi_.sigma0 * psi_.sigma0;
  const double sb2 = phi_.sigma0 * phi_.sigma0;
  const double S = s2 + sb2;
  const double tt = tau(t, env_.gamma);
  const double re = s2 * sb2 / S + hb * hb * tt * tt / (4.0 * m * m * S) +
                    D_ * tau_squared_integral(t, env_.gamma) / (m * m);
  return {re, -hb * (s2 - sb2) / (2.0 * m * S) * tt};
}

Complex PairKernel::overlap() const {
  const double s2 = psi_.sigma0 * psi_.sigma0;
  const double sb2 = phi_.sigma0 * phi_.sigma0;
  const Complex integral_p12 = std::sqrt(2.0 * psi_.sigma0 * phi_.sigma0 / (s2 + sb2)) * std::exp(b0());
  return std::conj(integral_p12);
}

GaussianForm PairKernel::form(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("PairKernel: time must be non-negative");
  const double hb = c_.hbar;
  const double m = c_.mass;
  const double s2 = psi_.sigma0 * psi_.sigma0;
  const double sb2 = phi_.sigma0 * phi_.sigma0;
  const double S = s2 + sb2;
  const double tt = tau(t, env_.gamma);
  const double tt_rate = std::exp(-2.0 * env_.gamma * t);

  GaussianForm f;
  f.weight = std::conj(overlap());
  f.center = b1(t);
  f.var = 2.0 * b2(t);
  f.center_rate = Complex((phi_.p0 * sb2 + psi_.p0 * s2) / (m * S) * tt_rate - c_.g * tt,
                          -hb * tt_rate / (2.0 * m) * (psi_.x0 - phi_.x0) / S);
  f.var_rate = 2.0 * Complex(hb * hb * tt * tt_rate / (2.0 * m * m * S) + D_ * tt * tt / (m * m),
                             -hb * (s2 - sb2) / (2.0 * m * S) * tt_rate);
  return f;
}

Complex PairKernel::density(double x, double t) const { return form(t).value(x); }

Complex PairKernel::current(double x, double t) const { return form(t).current(x); }

double gamma12(double t, const PairKernel& kernel) {
  const GaussianPacket& a = kernel.psi();
  const GaussianPacket& b = kernel.phi();
  if (a.sigma0 != b.sigma0 || a.x0 != b.x0)
    throw std::domain_error("gamma12: closed form needs equal widths and centres");
  const ModelConstants& c = kernel.constants();
  const double dp = a.p0 - b.p0;
  const double s2 = a.sigma0 * a.sigma0;
  const double tt = tau(t, kernel.environment().gamma);
  const double sigma_t2 = 2.0 * kernel.b2(t).real();
  const double bracket = 1.0 + c.hbar * c.hbar * tt * tt / (4.0 * c.mass * c.mass * s2 * s2);
  return -s2 * dp * dp / (2.0 * c.hbar * c.hbar) * (1.0 - s2 / sigma_t2 * bracket);
}

OneParticleState OneParticleState::gaussian(const GaussianPacket& p) {
  OneParticleState s;
  s.terms.push_back({Complex(1.0, 0.0), p});
  return s;
}

OneParticleState OneParticleState::cat(double x0, double p0, double sigma0) {
  OneParticleState s;
  s.terms.push_back({Complex(1.0, 0.0), GaussianPacket{x0, p0, sigma0, 0.0}});
  s.terms.push_back({Complex(1.0, 0.0), GaussianPacket{-x0, -p0, sigma0, 0.0}});
  return s;
}

void OneParticleState::validate() const {
  if (terms.empty()) throw std::domain_error("OneParticleState: no terms");
  for (const Term& term : terms) {
    require_minimum_uncertainty(term.packet, "OneParticleState");
    if (!std::isfinite(term.amplitude.real()) || !std::isfinite(term.amplitude.imag()))
      throw std::domain_error("OneParticleState: non-finite amplitude");
  }
}

double OneParticleState::norm_squared(const ModelConstants& c) const {
  Complex sum = 0.0;
  for (const Term& i : terms)
    for (const Term& j : terms)
      sum += i.amplitude * std::conj(j.amplitude) * initial_overlap(i.packet, j.packet, c);
  return sum.real();
}

OneParticleState OneParticleState::normalized(const ModelConstants& c) const {
  validate();
  const double n2 = norm_squared(c);
  if (!(n2 > 0.0)) throw std::domain_error("OneParticleState: zero norm");
  OneParticleState out = *this;
  for (Term& term : out.terms) term.amplitude /= std::sqrt(n2);
  return out;
}

TwoParticleSystem::TwoParticleSystem(const OneParticleState& psi, const OneParticleState& phi,
                                     Statistics stats, const Environment& env,
                                     const ModelConstants& c)
    : psi_(psi.normalized(c)), phi_(phi.normalized(c)), stats_(stats), env_(env), c_(c) {
  env_.validate();
  // s = int P_21 dx = sum phi_i conj(psi_j) <psi_j | phi_i>
  s_ = 0.0;
  for (const auto& i : phi_.terms)
    for (const auto& j : psi_.terms)
      s_ += i.amplitude * std::conj(j.amplitude) * initial_overlap(i.packet, j.packet, c_);
  if (stats_ == Statistics::fermion && !(1.0 - std::norm(s_) > 1e-12))
    throw std::domain_error("TwoParticleSystem: antisymmetric state vanishes (psi = phi)");
}

double TwoParticleSystem::sign() const {
  switch (stats_) {
    case Statistics::boson: return 1.0;
    case Statistics::fermion: return -1.0;
    case Statistics::maxwell_boltzmann: return 0.0;
  }
  return 0.0;
}

double TwoParticleSystem::norm_squared() const {
  if (stats_ == Statistics::maxwell_boltzmann) return 0.5;
  return 1.0 / (2.0 * (1.0 + sign() * std::norm(s_)));
}

Complex TwoParticleSystem::bilinear(const OneParticleState& left, const OneParticleState& right,
                                    double x, double t, bool current) const {
  Complex sum = 0.0;
  for (const auto& i : left.terms) {
    for (const auto& j : right.terms) {
      const GaussianForm f = PairKernel(i.packet, j.packet, env_, c_).form(t);
      sum += i.amplitude * std::conj(j.amplitude) * (current ? f.current(x) : f.value(x));
    }
  }
  return sum;
}

double TwoParticleSystem::p11(double x, double t) const { return bilinear(psi_, psi_, x, t, false).real(); }
double TwoParticleSystem::p22(double x, double t) const { return bilinear(phi_, phi_, x, t, false).real(); }
Complex TwoParticleSystem::p12(double x, double t) const { return bilinear(psi_, phi_, x, t, false); }
double TwoParticleSystem::j11(double x, double t) const { return bilinear(psi_, psi_, x, t, true).real(); }
double TwoParticleSystem::j22(double x, double t) const { return bilinear(phi_, phi_, x, t, true).real(); }
Complex TwoParticleSystem::j12(double x, double t) const { return bilinear(psi_, phi_, x, t, true); }

double TwoParticleSystem::joint_density(double x1, double x2, double t) const {
  const double direct = p11(x1, t) * p22(x2, t) + p22(x1, t) * p11(x2, t);
  if (stats_ == Statistics::maxwell_boltzmann) return 0.5 * direct;
  // P_21 = conj(P_12)
  const Complex exchange = p12(x1, t) * std::conj(p12(x2, t));
  return norm_squared() * (direct + sign() * 2.0 * exchange.real());
}

double TwoParticleSystem::single_particle_density(double x, double t) const {
  const double direct = p11(x, t) + p22(x, t);
  if (stats_ == Statistics::maxwell_boltzmann) return 0.5 * direct;
  return norm_squared() * (direct + sign() * 2.0 * (p12(x, t) * s_).real());
}

double TwoParticleSystem::single_particle_current(double x, double t) const {
  const double direct = j11(x, t) + j22(x, t);
  if (stats_ == Statistics::maxwell_boltzmann) return 0.5 * direct;
  return norm_squared() * (direct + sign() * 2.0 * (j12(x, t) * s_).real());
}

double TwoParticleSystem::continuity_residual(double x, double t, double h) const {
  if (!(h > 0.0) || t - h < 0.0) throw std::domain_error("continuity_residual: need t >= h > 0");
  const double dpdt = (single_particle_density(x, t + h) - single_particle_density(x, t - h)) / (2.0 * h);
  const double djdx = (single_particle_current(x + h, t) - single_particle_current(x - h, t)) / (2.0 * h);
  return std::abs(dpdt + djdx);
}

TwoParticleSystem::Moments TwoParticleSystem::moments(const OneParticleState& left,
                                                     const OneParticleState& right, double t) const {
  Moments m{};
  for (const auto& i : left.terms) {
    for (const auto& j : right.terms) {
      const GaussianForm f = PairKernel(i.packet, j.packet, env_, c_).form(t);
      const Complex w = i.amplitude * std::conj(j.amplitude) * f.weight;
      m.m0 += w;
      m.m1 += w * f.center;
      m.m2 += w * (f.var + f.center * f.center);
    }
  }
  return m;
}

double TwoParticleSystem::position_rms(double t) const {
  const Moments a = moments(psi_, psi_, t);
  const Moments b = moments(phi_, phi_, t);
  double second = a.m2.real() + b.m2.real();
  if (stats_ == Statistics::maxwell_boltzmann) return std::sqrt(0.5 * second);
  second += sign() * 2.0 * (moments(psi_, phi_, t).m2 * s_).real();
  return std::sqrt(norm_squared() * second);
}

double TwoParticleSystem::separation_rms(double t) const {
  const Moments a = moments(psi_, psi_, t);
  const Moments b = moments(phi_, phi_, t);
  // <x1^2> = <x2^2> and <x1 x2> from the bilinear expansion of the joint density
  double square = a.m2.real() * b.m0.real() + b.m2.real() * a.m0.real();
  double cross = 2.0 * a.m1.real() * b.m1.real();
  if (stats_ == Statistics::maxwell_boltzmann) return std::sqrt(2.0 * 0.5 * (square - cross));
  const Moments ab = moments(psi_, phi_, t);
  square += sign() * 2.0 * (ab.m2 * std::conj(ab.m0)).real();
  cross += sign() * 2.0 * std::norm(ab.m1);
  return std::sqrt(2.0 * norm_squared() * (square - cross));
}

}  // namespace cldecohere
