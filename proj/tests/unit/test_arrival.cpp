#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "cldecohere/analysis.hpp"
#include "cldecohere/arrival.hpp"

using namespace cldecohere;

namespace {
const ModelConstants kC{};
const GaussianPacket kFig1{-5.0, 0.5, 1.0, 0.0};
}  // namespace

TEST(Arrival, NormalizedAndMomentsMatchDenseTrapezoid) {
  const EvolvedGaussian g(kFig1, {0.1, 5.0}, kC);
  const UniformGrid ts{0.0, 200.0, 40001};
  const ArrivalDistribution d = arrival_distribution(g, 0.0, ts.values());
  EXPECT_NEAR(d.normalization_check, 1.0, 1e-9);
  const ArrivalMoments m = mean_and_rms(d);
  EXPECT_NEAR(m.mean, d.tau_a, 1e-4);
  EXPECT_NEAR(m.rms, d.sigma_a, 1e-4);
  for (double p : d.pi_values) EXPECT_GE(p, 0.0);
}

TEST(Arrival, BallisticLimitPeaksNearClassicalTime) {
  // fast, narrow-in-momentum packet: tau_a ~ distance / velocity
  const EvolvedGaussian g({-20.0, 5.0, 2.0, 0.0}, {0.0, 0.0}, kC);
  const ArrivalDistribution d = arrival_distribution(g, 0.0, {1.0, 4.0});
  EXPECT_NEAR(d.tau_a, 4.0, 0.05);
}

TEST(Arrival, NoFluxIsAScenarioError) {
  EXPECT_THROW(arrival_distribution([](double, double) { return 0.0; }, 0.0, {0.0, 1.0}), ScenarioError);
}

TEST(Arrival, CatOverloadUsesSuperpositionCurrent) {
  const CatState cat = CatState::symmetric(5.0, -2.0, 1.0);
  // the mirror-symmetric current vanishes at the origin, so nothing arrives there
  EXPECT_THROW(arrival_distribution(cat, {0.01, 1.0}, kC, 0.0, {0.0, 1.0}), ScenarioError);
  const ArrivalDistribution d = arrival_distribution(cat, {0.01, 1.0}, kC, -3.0, {0.0, 2.5, 5.0});
  EXPECT_NEAR(d.normalization_check, 1.0, 1e-8);
  EXPECT_GT(d.tau_a, 0.0);
}

TEST(Arrival, MeanAndRmsRejectsUnnormalized) {
  EXPECT_THROW(mean_and_rms({0.0, 1.0, 2.0}, {0.1, 0.1, 0.1}), std::domain_error);
  const ArrivalMoments m = mean_and_rms({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
  EXPECT_NEAR(m.mean, 1.0, 1e-15);
}

TEST(Trajectories, QuantileSeedsAreSymmetricQuantiles) {
  const GaussianPacket p{1.0, 0.0, 2.0, 1.0};
  const auto s = quantile_seeds(p, 4);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_NEAR(s[0] + s[3], 2.0, 1e-12);
  // 1/8 quantile of N(1, w0^2)
  const double w0 = p.position_uncertainty();
  EXPECT_NEAR(0.5 * std::erfc(-(s[0] - 1.0) / (w0 * std::sqrt(2.0))), 0.125, 1e-12);
}

TEST(Trajectories, QuantileInvarianceForSinglePacket) {
  const GaussianPacket p{-1.0, 0.5, 1.0, 1.0};
  const Environment env{0.05, 1.0};
  ModelConstants c;
  c.g = 0.3;
  const EvolvedGaussian g(p, env, c);
  const std::vector<double> qs{-2, -1, 0, 1, 2};
  std::vector<double> seeds;
  for (double q : qs) seeds.push_back(p.x0 + q * p.position_uncertainty());
  const UniformGrid ts{0.0, 5.0, 11};
  const TrajectoryBundle b = bohm_trajectories([&](double x, double t) { return g.bohm_velocity(x, t); }, seeds,
                                               std::vector<SeedLabel>(5, SeedLabel::single), ts.values(), 1e-3);
  for (std::size_t i = 0; i < qs.size(); ++i)
    for (std::size_t k = 0; k < ts.count; ++k)
      EXPECT_NEAR(b.positions[i][k], g.classical_center(ts.at(k)) + qs[i] * g.width(ts.at(k)), 1e-8);
}

TEST(Trajectories, TerminationLeavesNaN) {
  const VelocityField v = [](double, double t) {
    if (t > 0.5) throw StepError("empty");
    return 1.0;
  };
  const TrajectoryBundle b = bohm_trajectories(v, {0.0}, {SeedLabel::single}, {0.0, 0.4, 1.0}, 0.1);
  ASSERT_TRUE(b.terminated_at[0].has_value());
  EXPECT_NEAR(b.positions[0][1], 0.4, 1e-12);
  EXPECT_TRUE(std::isnan(b.positions[0][2]));
}

TEST(Trajectories, ParallelRunIsIdentical) {
  const CatState cat = CatState::symmetric(5.0, -2.0, 1.0);
  std::vector<double> seeds;
  std::vector<SeedLabel> labels;
  cat_seeds(cat, 4, seeds, labels);
  ASSERT_EQ(seeds.size(), 10u);
  EXPECT_EQ(std::count(labels.begin(), labels.end(), SeedLabel::center), 2);
  const auto v = cat_velocity(cat, {0.01, 1.0}, kC);
  const auto a = bohm_trajectories(v, seeds, labels, {0.0, 0.5, 1.0}, 1e-2, 1);
  const auto b = bohm_trajectories(v, seeds, labels, {0.0, 0.5, 1.0}, 1e-2, 3);
  EXPECT_EQ(a.positions, b.positions);
}

TEST(Trajectories, MirrorSymmetricCatGivesMirroredPaths) {
  const CatState cat = CatState::symmetric(5.0, -2.0, 1.0);
  std::vector<double> seeds;
  std::vector<SeedLabel> labels;
  cat_seeds(cat, 3, seeds, labels);
  const auto b = bohm_trajectories(cat_velocity(cat, {0.05, 1.0}, kC), seeds, labels, {0.0, 4.0}, 1e-3);
  std::vector<double> end;
  for (const auto& p : b.positions) end.push_back(p.back());
  std::sort(end.begin(), end.end());
  for (std::size_t i = 0; i < end.size(); ++i) EXPECT_NEAR(end[i], -end[end.size() - 1 - i], 1e-6);
}

TEST(Clustering, CountsAndContrast) {
  EXPECT_EQ(count_clusters({0.0, 0.1, 0.2, 5.0, 5.1, 9.0}, 1.0), 3u);
  EXPECT_EQ(count_clusters({}, 1.0), 0u);
  const std::vector<double> even{0, 1, 2, 3, 4, 5, 6};
  EXPECT_NEAR(gap_contrast(even), 1.0, 1e-15);
  EXPECT_EQ(count_contrast_clusters(even, 2.0), 1u);
  const std::vector<double> bunched{0, 0.1, 0.2, 0.3, 2.0, 2.1, 2.2, 2.3, 4.0, 4.1, 4.2};
  EXPECT_GT(gap_contrast(bunched), 10.0);
  EXPECT_EQ(count_contrast_clusters(bunched, 2.0), 3u);
}

TEST(Analysis, VariationMeasures) {
  EXPECT_DOUBLE_EQ(total_variation({0, 1, 0, 2}), 4.0);
  EXPECT_DOUBLE_EQ(oscillation_excess({0, 1, 2, 1, 0}), 0.0);
  EXPECT_DOUBLE_EQ(oscillation_excess({0, 2, 1, 2, 0}), 2.0);
}
