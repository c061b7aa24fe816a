#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cldecohere/gaussian.hpp"
#include "evolution_oracle.hpp"

using namespace cldecohere;

namespace {

// Direct formulas, fine away from gamma t -> 0.
double tau_direct(double t, double g) { return (1 - std::exp(-2 * g * t)) / (2 * g); }
double tau_int_direct(double t, double g) { return (2 * g * t - 1 + std::exp(-2 * g * t)) / (4 * g * g); }
double tau_sq_direct(double t, double g) {
  return (4 * g * t + 4 * std::exp(-2 * g * t) - 3 - std::exp(-4 * g * t)) / (16 * g * g * g);
}

}  // namespace

TEST(TauHelpers, MatchDirectFormsAcrossSeriesThreshold) {
  for (double g : {0.05, 0.2, 1.0})
    for (double t : {0.3, 1.0, 2.4, 2.6, 8.0}) {
      EXPECT_NEAR(tau(t, g) / tau_direct(t, g), 1.0, 1e-13);
      EXPECT_NEAR(tau_integral(t, g) / tau_int_direct(t, g), 1.0, 1e-11);
      EXPECT_NEAR(tau_squared_integral(t, g) / tau_sq_direct(t, g), 1.0, 1e-9);
      EXPECT_NEAR(tau_double_rate(t, g) / ((1 - std::exp(-4 * g * t)) / (4 * g)), 1.0, 1e-13);
    }
}

TEST(TauHelpers, ZeroFrictionLimit) {
  EXPECT_EQ(tau(2.0, 0.0), 2.0);
  EXPECT_EQ(tau_integral(2.0, 0.0), 2.0);
  EXPECT_NEAR(tau_squared_integral(2.0, 0.0), 8.0 / 3.0, 1e-15);
  EXPECT_NEAR(tau(2.0, 1e-12), 2.0, 1e-10);
}

TEST(TauHelpers, DerivativeChain) {
  const double g = 0.3, t = 1.7, h = 1e-5;
  EXPECT_NEAR((tau(t + h, g) - tau(t - h, g)) / (2 * h), std::exp(-2 * g * t), 1e-9);
  EXPECT_NEAR((tau_integral(t + h, g) - tau_integral(t - h, g)) / (2 * h), tau(t, g), 1e-9);
  EXPECT_NEAR((tau_squared_integral(t + h, g) - tau_squared_integral(t - h, g)) / (2 * h),
              tau(t, g) * tau(t, g), 1e-9);
}

TEST(EvolvedGaussian, InitialStateAndNormalization) {
  ModelConstants c;
  const GaussianPacket p{1.0, 0.5, 0.8, 1.2};
  const EvolvedGaussian g(p, {0.1, 3.0}, c);
  EXPECT_NEAR(g.probability_density(1.3, 0.0), std::norm(initial_wavefunction(p, 1.3, c)), 1e-14);
  for (double t : {0.0, 0.5, 4.0}) {
    const double total = integrate_adaptive([&](double x) { return g.probability_density(x, t); },
                                            -60.0, 60.0, 1e-12).value;
    EXPECT_NEAR(total, 1.0, 1e-10);
  }
}

TEST(EvolvedGaussian, MeanAndWidthFromMoments) {
  ModelConstants c;
  c.g = 0.5;
  const EvolvedGaussian g({-1.0, 2.0, 0.6, -0.5}, {0.2, 1.0}, c);
  const double t = 2.0;
  const auto P = [&](double x) { return g.probability_density(x, t); };
  const double lo = g.classical_center(t) - 20 * g.width(t), hi = g.classical_center(t) + 20 * g.width(t);
  const double mean = integrate_adaptive([&](double x) { return x * P(x); }, lo, hi, 1e-12).value;
  const double var =
      integrate_adaptive([&](double x) { return (x - mean) * (x - mean) * P(x); }, lo, hi, 1e-12).value;
  EXPECT_NEAR(mean, g.classical_center(t), 1e-9);
  EXPECT_NEAR(std::sqrt(var), g.width(t), 1e-9);
}

TEST(EvolvedGaussian, ContinuityHoldsForClosedFormCurrent) {
  ModelConstants c;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const GaussianPacket p{-3 + 6 * u(rng), -2 + 4 * u(rng), 0.5 + u(rng), -1 + 4 * u(rng)};
    const Environment env{0.5 * u(rng), 25 * u(rng)};
    const EvolvedGaussian g(p, env, c);
    const double t = 0.2 + 4 * u(rng);
    const double x = g.classical_center(t) + (2 * u(rng) - 1) * g.width(t);
    const double h = 1e-4;
    const double dp = (g.probability_density(x, t + h) - g.probability_density(x, t - h)) / (2 * h);
    const double dj = (g.probability_current(x + h, t) - g.probability_current(x - h, t)) / (2 * h);
    EXPECT_LT(std::abs(dp + dj), 1e-6 * (std::abs(dp) + std::abs(dj)) + 1e-12);
  }
}

TEST(EvolvedGaussian, MasterEquationResidualProperty) {
  // Second-order stencils: the residual is pure O(h^2) truncation on the exact
  // solution, so halving h divides it by 4. Points stay within a coherence length
  // of the diagonal, where rho is not negligible.
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    ModelConstants c;
    c.g = (i % 2) ? 1.0 : 0.0;
    const bool moderate = i < 20;
    const GaussianPacket p{-2 + 4 * u(rng), -1 + 2 * u(rng), 0.6 + u(rng), -1 + 4 * u(rng)};
    const Environment env = moderate ? Environment{0.2 * u(rng), 2 * u(rng)} : Environment{0.5 * u(rng), 25 * u(rng)};
    const EvolvedGaussian g(p, env, c);
    const DensityMatrixFunction rho = [&](double x, double xp, double t) { return g.density_matrix_xy(x, xp, t); };
    const double t = moderate ? 0.2 + 1.8 * u(rng) : 0.2 + 3 * u(rng);
    const double c0 = g.classical_center(t);
    double lo = 0.0, hi = 20.0 * g.width(t);
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double coh = std::abs(rho(c0 + mid / 2, c0 - mid / 2, t)) /
                         std::sqrt(g.probability_density(c0 + mid / 2, t) * g.probability_density(c0 - mid / 2, t));
      (coh > std::exp(-0.5) ? lo : hi) = mid;
    }
    const double ell = std::min(lo, g.width(t));
    const double r = ell * (u(rng) - 0.5);
    const double R = g.classical_center(t) + (u(rng) - 0.5) * g.width(t);
    const PhasePoint pt{R + r / 2, R - r / 2, t};
    const double dt = std::abs(central_time_derivative(rho, pt, 1e-3));
    const double coarse = std::abs(residual_cl(rho, pt, 2e-3, env, c));
    const double fine = std::abs(residual_cl(rho, pt, 1e-3, env, c));
    EXPECT_NEAR(coarse / fine, 4.0, 0.2) << "draw " << i;
    // |d rho/dt| alone vanishes at stationary points; |rho| keeps the scale finite (unit time)
    if (moderate) EXPECT_LT(fine / (dt + std::abs(rho(pt.x, pt.xp, t))), 1e-5) << "draw " << i;
  }
}

TEST(EvolvedGaussian, DensityMatrixHermitianAndDiagonalConsistent) {
  ModelConstants c;
  const EvolvedGaussian g({0.5, 1.0, 1.0, 0.7}, {0.2, 4.0}, c);
  const Complex a = g.density_matrix_xy(0.3, -0.8, 1.5);
  const Complex b = g.density_matrix_xy(-0.8, 0.3, 1.5);
  EXPECT_LT(std::abs(a - std::conj(b)), 1e-15);
  EXPECT_NEAR(g.density_matrix_xy(0.4, 0.4, 1.5).real(), g.probability_density(0.4, 1.5), 1e-15);
}

TEST(EvolvedGaussian, CharacteristicFunctionOracle) {
  const GaussianPacket p{-1.0, 0.8, 1.0, 0.5};
  for (const Environment env : {Environment{0.05, 1.0}, Environment{0.3, 10.0}}) {
    ModelConstants c;
    c.g = 0.4;
    const EvolvedGaussian g(p, env, c);
    const oracle::Wave psi = [](double x) { return oracle::gaussian_wave(x, -1.0, 0.8, 1.0, 0.5); };
    for (double t : {0.7, 2.0})
      for (double x : {-1.0, 0.5, 2.0}) {
        const double ref = oracle::characteristic_density(x, t, psi, psi, env.gamma, env.kT, c.g).real();
        EXPECT_NEAR(g.probability_density(x, t), ref, 1e-8) << "t=" << t << " x=" << x;
      }
  }
}

TEST(EvolvedGaussian, ClosedSystemMatchesSchrodinger) {
  ModelConstants c;
  const GaussianPacket p{0.5, -1.0, 0.8, 0.0};
  const EvolvedGaussian g(p, {0.0, 0.0}, c);
  const oracle::Wave psi0 = [](double x) { return oracle::gaussian_wave(x, 0.5, -1.0, 0.8, 0.0); };
  for (double x : {-3.0, -1.0, 0.0, 1.0}) {
    const double ref = std::norm(oracle::schrodinger_wavefunction(x, 2.0, psi0));
    EXPECT_NEAR(g.probability_density(x, 2.0), ref, 1e-9);
  }
}

TEST(EvolvedGaussian, QuantileVelocityIsLinear) {
  ModelConstants c;
  const EvolvedGaussian g({1.0, -0.5, 1.0, 2.0}, {0.1, 2.0}, c);
  const double t = 3.0, q = 1.7;
  const double x = g.classical_center(t) + q * g.width(t);
  EXPECT_NEAR(g.bohm_velocity(x, t), g.center_velocity(t) + q * g.width_rate(t), 1e-12);
}

TEST(EvolvedGaussian, BohmVelocityRefusesEmptyRegions) {
  ModelConstants c;
  const EvolvedGaussian g({0.0, 0.0, 0.1, 0.0}, {0.0, 0.0}, c);
  EXPECT_THROW(g.bohm_velocity(50.0, 0.0), StepError);
}

TEST(InitialOverlap, MatchesQuadrature) {
  ModelConstants c;
  const GaussianPacket a{1.0, 0.5, 0.8, 0.3}, b{-0.5, -1.0, 1.3, -0.7};
  const auto re = integrate_adaptive(
      [&](double x) { return (initial_wavefunction(a, x, c) * std::conj(initial_wavefunction(b, x, c))).real(); },
      -30, 30, 1e-13);
  const auto im = integrate_adaptive(
      [&](double x) { return (initial_wavefunction(a, x, c) * std::conj(initial_wavefunction(b, x, c))).imag(); },
      -30, 30, 1e-13);
  const Complex o = initial_overlap(a, b, c);
  EXPECT_NEAR(o.real(), re.value, 1e-12);
  EXPECT_NEAR(o.imag(), im.value, 1e-12);
  EXPECT_NEAR(initial_overlap(a, a, c).real(), 1.0, 1e-14);
}

TEST(CrossDensity, InitialProductAndDiagonalReduction) {
  ModelConstants c;
  const GaussianPacket a{2.0, -1.0, 1.0, 0.4}, b{-2.0, 1.0, 0.7, 0.0};
  const Environment env{0.1, 5.0};
  const GaussianForm f0 = cross_density(a, b, 0.0, env, c);
  for (double x : {-1.0, 0.0, 1.5})
    EXPECT_LT(std::abs(f0.value(x) - initial_wavefunction(a, x, c) * std::conj(initial_wavefunction(b, x, c))), 1e-14);
  const EvolvedGaussian g(a, env, c);
  for (double x : {-1.0, 0.3})
    EXPECT_NEAR(cross_density(a, a, 2.0, env, c).value(x).real(), g.probability_density(x, 2.0), 1e-14);
}

TEST(CrossDensity, CharacteristicFunctionOracle) {
  ModelConstants c;
  const GaussianPacket a{2.0, -1.0, 1.0, 0.0}, b{-2.0, 1.0, 0.7, 0.0};
  const Environment env{0.1, 2.0};
  const oracle::Wave wa = [](double x) { return oracle::gaussian_wave(x, 2.0, -1.0, 1.0, 0.0); };
  const oracle::Wave wb = [](double x) { return oracle::gaussian_wave(x, -2.0, 1.0, 0.7, 0.0); };
  for (double x : {-0.5, 0.4}) {
    const Complex ref = oracle::characteristic_density(x, 1.0, wa, wb, env.gamma, env.kT, 0.0);
    EXPECT_LT(std::abs(cross_density(a, b, 1.0, env, c).value(x) - ref), 1e-8);
  }
}
