#include <gtest/gtest.h>

#include <cmath>

#include "cldecohere/model.hpp"

using namespace cldecohere;

TEST(Model, DiffusionCoefficient) {
  ModelConstants c;
  c.mass = 2.0;
  EXPECT_DOUBLE_EQ(diffusion_coefficient({0.1, 3.0}, c), 2.0 * 2.0 * 0.1 * 3.0);
  EXPECT_EQ(diffusion_coefficient({0.0, 5.0}, c), 0.0);
  EXPECT_THROW(diffusion_coefficient({-0.1, 1.0}, c), std::domain_error);
  EXPECT_THROW(diffusion_coefficient({0.1, -1.0}, c), std::domain_error);
}

TEST(Model, ConstantsValidation) {
  ModelConstants c;
  c.hbar = 0.0;
  EXPECT_THROW(c.validate(), std::domain_error);
  c = {};
  c.mass = -1.0;
  EXPECT_THROW(c.validate(), std::domain_error);
  c = {};
  c.g = NAN;
  EXPECT_THROW(c.validate(), std::domain_error);
}

TEST(Model, UncertaintyProductGrowsWithStretching) {
  ModelConstants c;
  for (double eta : {0.0, 0.5, 1.0, 3.0}) {
    GaussianPacket p{1.0, 0.0, 0.7, eta};
    EXPECT_NEAR(p.uncertainty_product(c), 0.5 * std::sqrt(1.0 + eta * eta), 1e-14);
    EXPECT_NEAR(p.position_uncertainty(), 0.7 * std::sqrt(1.0 + eta * eta), 1e-14);
  }
  GaussianPacket bad{0.0, 0.0, 0.0, 0.0};
  EXPECT_THROW(bad.validate(), std::domain_error);
}

TEST(Model, UniformGrid) {
  UniformGrid g{-1.0, 1.0, 5};
  EXPECT_DOUBLE_EQ(g.spacing(), 0.5);
  const auto v = g.values();
  ASSERT_EQ(v.size(), 5u);
  EXPECT_DOUBLE_EQ(v.front(), -1.0);
  EXPECT_DOUBLE_EQ(v.back(), 1.0);
  UniformGrid bad{1.0, -1.0, 3};
  EXPECT_THROW(bad.validate(), std::domain_error);
}

TEST(Model, KindAndStatisticsNamesRoundTrip) {
  for (auto k : {ScenarioKind::arrival, ScenarioKind::cat, ScenarioKind::stretch_cat,
                 ScenarioKind::identical_single, ScenarioKind::identical_joint,
                 ScenarioKind::shutter, ScenarioKind::trajectories, ScenarioKind::residual_check})
    EXPECT_EQ(parse_scenario_kind(to_string(k)), k);
  for (auto s : {Statistics::boson, Statistics::fermion, Statistics::maxwell_boltzmann})
    EXPECT_EQ(parse_statistics(to_string(s)), s);
  EXPECT_THROW(parse_scenario_kind("nope"), std::domain_error);
  EXPECT_THROW(parse_statistics("anyon"), std::domain_error);
}

TEST(Model, ScenarioValidation) {
  Scenario s;
  s.kind = ScenarioKind::arrival;
  s.packets = {{-5.0, 0.5, 1.0, 0.0}};
  s.time = UniformGrid{0.0, 10.0, 11};
  EXPECT_THROW(s.validate(), std::domain_error);  // no detector
  s.detector = 0.0;
  EXPECT_NO_THROW(s.validate());
  s.constants.g = 1.0;
  EXPECT_THROW(s.validate(), std::domain_error);  // force only for cat / residual

  Scenario sh;
  sh.kind = ScenarioKind::shutter;
  sh.wavenumber = 1.0;
  sh.space = UniformGrid{0.0, 1.0, 2};
  sh.time = UniformGrid{0.0, 1.0, 2};
  EXPECT_THROW(sh.validate(), std::domain_error);  // t = 0 not allowed
  sh.time = UniformGrid{1.0, 2.0, 2};
  EXPECT_NO_THROW(sh.validate());

  Scenario id;
  id.kind = ScenarioKind::identical_single;
  id.packets = {{5, 0, 1, 0}, {5, 0, 0.5, 0}, {1, 1, 1, 0}};
  id.statistics = Statistics::boson;
  id.space = UniformGrid{-1, 1, 3};
  id.time = UniformGrid{0, 1, 2};
  EXPECT_THROW(id.validate(), std::domain_error);  // three packets
}
