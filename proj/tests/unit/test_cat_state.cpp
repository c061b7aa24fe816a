#include <gtest/gtest.h>

#include <cmath>

#include "cldecohere/cat_state.hpp"
#include "cldecohere/identical.hpp"
#include "evolution_oracle.hpp"

using namespace cldecohere;

namespace {
const ModelConstants kC{};
const CatState kFig2 = CatState::symmetric(5.0, -2.0, 1.0);
}  // namespace

TEST(CatState, NormalizationIntegratesToOne) {
  for (const CatState& cat : {kFig2, CatState::symmetric(1.0, 0.0, 1.0), CatState::symmetric(2.0, 0.5, 0.7, 1.5)}) {
    for (double t : {0.0, 1.5}) {
      const double total = integrate_adaptive([&](double x) { return cat_density_kernel(cat, x, t, {0.05, 1.0}, kC); },
                                              -60, 60, 1e-12).value;
      EXPECT_NEAR(total, 1.0, 1e-10);
    }
  }
  // closely spaced branches overlap, so N differs visibly from 1/sqrt(2)
  EXPECT_GT(std::abs(CatState::symmetric(0.5, 0.0, 1.0).norm(kC) - 1.0 / std::sqrt(2.0)), 0.05);
}

TEST(CatState, ValidationAndSymmetry) {
  CatState c{{1, 0, 1, 0}, {-1, 0, 2, 0}};
  EXPECT_FALSE(c.is_symmetric());
  EXPECT_THROW(gamma_min(1.0, c, {0.1, 1.0}, kC), std::domain_error);
  EXPECT_THROW(gamma_min(1.0, CatState::symmetric(5, -2, 1, 1.0), {0.1, 1.0}, kC), std::domain_error);
}

TEST(Decoherence, VanishesWithoutDiffusionAndAtStart) {
  for (double t : {0.0, 0.1, 1.0, 10.0, 1e4}) {
    EXPECT_EQ(gamma_min(t, kFig2, {0.05, 0.0}, kC), 0.0);
    EXPECT_EQ(gamma_min(t, kFig2, {0.0, 3.0}, kC), 0.0);
  }
  EXPECT_EQ(gamma_min(0.0, kFig2, {0.05, 8.0}, kC), 0.0);
}

TEST(Decoherence, NonPositiveAndMonotone) {
  double prev = 0.0;
  for (double t = 0.5; t < 500.0; t *= 1.5) {
    const double g = gamma_min(t, kFig2, {0.05, 1.0}, kC);
    EXPECT_LE(g, 0.0);
    EXPECT_LT(g, prev);
    prev = g;
  }
}

TEST(Decoherence, LongTimeLimit) {
  EXPECT_NEAR(gamma_min(1e8, kFig2, {0.05, 1.0}, kC), -20.5, 1e-4);
}

TEST(Decoherence, EqualsKernelRatioEverywhere) {
  const Environment env{0.02, 3.0};
  for (double t : {0.5, 3.0})
    for (double x : {-4.0, 0.0, 2.5})
      EXPECT_NEAR(gamma_from_kernels(x, t, kFig2, env, kC), gamma_min(t, kFig2, env, kC), 1e-10);
}

TEST(Decoherence, StretchedMatchesKernelRatio) {
  const CatState cat = CatState::symmetric(5.0, -2.0, 1.0, 2.0);
  const Environment env{0.005, 5.0};
  for (double t : {1.0, 20.0})
    EXPECT_NEAR(gamma_from_kernels(0.3, t, cat, env, kC), gamma_stretched(t, cat, env, kC), 1e-9);
}

TEST(Decoherence, StretchedMatchesCharacteristicOracle) {
  // Independent of the library's kernels: brute-force P_ab, P_aa, P_bb.
  const double x0 = 2.0, p0 = -0.5, eta = 1.0;
  const CatState cat = CatState::symmetric(x0, p0, 1.0, eta);
  const Environment env{0.05, 1.0};
  const oracle::Wave a = [&](double x) { return oracle::gaussian_wave(x, x0, p0, 1.0, eta); };
  const oracle::Wave b = [&](double x) { return oracle::gaussian_wave(x, -x0, -p0, 1.0, eta); };
  const double t = 1.0, x = 0.0;
  const double ab = std::abs(oracle::characteristic_density(x, t, a, b, env.gamma, env.kT, 0.0));
  const double aa = oracle::characteristic_density(x, t, a, a, env.gamma, env.kT, 0.0).real();
  const double bb = oracle::characteristic_density(x, t, b, b, env.gamma, env.kT, 0.0).real();
  EXPECT_NEAR(gamma_stretched(t, cat, env, kC), std::log(ab / std::sqrt(aa * bb)), 1e-7);
}

TEST(Decoherence, PrintedStretchedFormOnlyAgreesInReducedCases) {
  const Environment env{0.005, 1.0};
  const CatState moving = CatState::symmetric(5.0, -2.0, 1.0, 1.0);
  const CatState still = CatState::symmetric(5.0, 0.0, 1.0, 1.0);
  EXPECT_NEAR(gamma_stretched_printed(3.0, still, env, kC), gamma_stretched(3.0, still, env, kC), 1e-12);
  EXPECT_NEAR(gamma_stretched_printed(3.0, kFig2, env, kC), gamma_stretched(3.0, kFig2, env, kC), 1e-12);
  EXPECT_GT(std::abs(gamma_stretched_printed(3.0, moving, env, kC) - gamma_stretched(3.0, moving, env, kC)), 1e-3);
}

TEST(Decoherence, MotionlessReduction) {
  const Environment env{0.005, 5.0};
  for (double eta : {0.0, 1.0, 3.0}) {
    const CatState cat = CatState::symmetric(5.0, 0.0, 1.0, eta);
    for (double t : {0.5, 10.0, 50.0})
      EXPECT_NEAR(gamma_motionless(t, cat, env, kC), gamma_stretched(t, cat, env, kC), 1e-12);
  }
  EXPECT_THROW(gamma_motionless(1.0, kFig2, env, kC), std::domain_error);
}

TEST(Decoherence, ZeroDissipationFormMatchesAtShortTimes) {
  const CatState cat = CatState::symmetric(5.0, 0.0, 1.0);
  const Environment env{1e-5, 10.0};
  for (double t : {0.5, 2.0})
    EXPECT_NEAR(gamma_zero_dissipation(t, cat, env, kC) / gamma_min(t, cat, env, kC), 1.0, 1e-3);
}

TEST(Decoherence, DecoherenceTimeScale) {
  // For sigma0 -> small and gamma t << 1 the loss follows exp(-t/tau_D), with d = 2 x0.
  const CatState cat = CatState::symmetric(5.0, 0.0, 0.01);
  const Environment env{0.005, 5.0};
  const double tau_d = decoherence_time(env, 10.0, kC);
  EXPECT_NEAR(tau_d, 0.6, 1e-12);
  for (double t : {tau_d / 100.0, tau_d / 30.0, tau_d / 10.0})
    EXPECT_NEAR(gamma_min(t, cat, env, kC) / (-t / tau_d), 1.0, 0.02);
  EXPECT_THROW(decoherence_time({0.0, 1.0}, 1.0, kC), std::domain_error);
  EXPECT_THROW(decoherence_time(env, 0.0, kC), std::domain_error);
}

TEST(CatDensity, ClosedCrossTermMatchesKernel) {
  const Environment env{0.01, 1.0};
  for (double t : {0.5, 2.5, 5.0})
    for (double x = -8.0; x <= 8.0; x += 0.7) {
      const double kernel = 2.0 * cross_density(kFig2.a, kFig2.b, t, env, kC).value(x).real();
      EXPECT_NEAR(cat_cross_term_closed(kFig2, x, t, env, kC), kernel, 1e-12);
    }
}

TEST(CatDensity, PhaseIsArgumentOfPba) {
  const Environment env{0.01, 1.0};
  const double t = 2.0;
  for (double x : {-1.0, 0.3}) {
    const Complex pba = cross_density(kFig2.b, kFig2.a, t, env, kC).value(x);
    const double d = std::remainder(std::arg(pba) - phase_min(x, t, kFig2, env, kC), 2.0 * M_PI);
    EXPECT_NEAR(d, 0.0, 1e-10);
  }
}

TEST(CatDensity, ForceShiftsFringesRigidly) {
  ModelConstants c;
  c.g = 0.7;
  const Environment env{0.02, 1.0};
  const double t = 2.0;
  const double shift = -c.g * tau_integral(t, env.gamma);
  for (double x : {-1.0, 0.0, 0.8})
    EXPECT_NEAR(cat_density(kFig2, x, t, env, c), cat_density(kFig2, x - shift, t, env, kC), 1e-12);
}

TEST(CatDensity, MatchesCharacteristicOracle) {
  const Environment env{0.05, 1.0};
  const oracle::Wave a = [](double x) { return oracle::gaussian_wave(x, 5.0, -2.0, 1.0, 0.0); };
  const oracle::Wave b = [](double x) { return oracle::gaussian_wave(x, -5.0, 2.0, 1.0, 0.0); };
  const double N2 = std::pow(kFig2.norm(kC), 2);
  const double x = 0.4, t = 2.5;
  const double ref = N2 * (oracle::characteristic_density(x, t, a, a, env.gamma, env.kT, 0).real() +
                           oracle::characteristic_density(x, t, b, b, env.gamma, env.kT, 0).real() +
                           2 * oracle::characteristic_density(x, t, a, b, env.gamma, env.kT, 0).real());
  EXPECT_NEAR(cat_density(kFig2, x, t, env, kC), ref, 1e-8);
}

TEST(CatCurrent, CumulativeReconstructionAgrees) {
  const Environment env{0.01, 1.0};
  for (double x : {-0.5, 0.7}) {
    const double t = 2.0;
    EXPECT_NEAR(cat_current_cumulative(kFig2, x, t, env, kC), cat_current(kFig2, x, t, env, kC), 1e-7);
  }
}

TEST(DecoherenceCurve, FieldsConsistent) {
  const UniformGrid ts{0.0, 10.0, 11};
  const DecoherenceCurve c = decoherence_curve(kFig2, ts.values(), {0.05, 1.0}, kC);
  ASSERT_EQ(c.gamma_values.size(), 11u);
  for (std::size_t i = 0; i < 11; ++i) {
    EXPECT_DOUBLE_EQ(c.attenuation[i], std::exp(c.gamma_values[i]));
    EXPECT_NEAR(c.gamma_values[i], gamma_min(c.times[i], kFig2, {0.05, 1.0}, kC), 1e-14);
  }
}
