#include <gtest/gtest.h>

#include <cmath>

#include "oodlab/errors.hpp"
#include "oodlab/risk.hpp"

using namespace oodlab;

namespace {

Domain unit_pair() {
  return Domain::make(DistributionSpec::uniform_box({0.0}, {1.0}),
                      DistributionSpec::uniform_box({0.5}, {1.5}));
}

}  // namespace

TEST(Hoeffding, PinnedWidth) {
  EXPECT_DOUBLE_EQ(hoeffding_half_width(10000), 0.019494746035204052);
  EXPECT_THROW(hoeffding_half_width(0), InvalidArgument);
}

TEST(Risk, ExactComponentsAndMixture) {
  Rng rng(0);
  const auto d = unit_pair();
  const auto h = Hypothesis::interval_set({{0.0, 0.8}});
  const auto in = risk(h, d, RiskTarget::id(), RiskMode::exact_only(), rng);
  const auto out = risk(h, d, RiskTarget::ood(), RiskMode::exact_only(), rng);
  EXPECT_TRUE(in.exact());
  EXPECT_NEAR(in.value, 0.2, 1e-15);
  EXPECT_NEAR(out.value, 0.3, 1e-15);
  for (double a : {0.0, 0.25, 0.5, 1.0}) {
    const auto mix = risk(h, d, RiskTarget::mixed(a), RiskMode::exact_only(), rng);
    EXPECT_NEAR(mix.value, (1 - a) * in.value + a * out.value, 1e-15);
  }
}

TEST(Risk, MonteCarloWithinHoeffding) {
  Rng rng(5);
  const auto d = unit_pair();
  const auto h = Hypothesis::interval_set({{0.0, 0.8}});
  int inside = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const auto est = risk(h, d, RiskTarget::mixed(0.5), RiskMode::monte_carlo(10000), rng);
    EXPECT_FALSE(est.exact());
    EXPECT_EQ(est.m, 10000u);
    EXPECT_DOUBLE_EQ(est.ci_half_width, hoeffding_half_width(10000));
    inside += std::abs(est.value - 0.25) <= est.ci_half_width ? 1 : 0;
  }
  EXPECT_EQ(inside, 50);
}

TEST(Risk, ExactOnlyThrowsWithoutClosedForm) {
  Rng rng(0);
  const auto d = Domain::make(DistributionSpec::half_gaussian(Point{0.0, 0.0}, 1.0),
                              DistributionSpec::uniform_ball(Point{3.0, 0.0}, 1.0));
  const auto h = Hypothesis::ball_union({Point{0.0, 0.0}, Point{1.0, 1.0}}, 0.5);
  EXPECT_THROW(risk(h, d, RiskTarget::id(), RiskMode::exact_only(), rng), ExactUnavailable);
  const auto est = risk(h, d, RiskTarget::id(), RiskMode::exact_if_possible(2000), rng);
  EXPECT_FALSE(est.exact());
  EXPECT_THROW(risk(h, d, RiskTarget::id(), RiskMode::monte_carlo(0), rng), InvalidArgument);
}

TEST(Risk, DimensionMismatch) {
  Rng rng(0);
  EXPECT_THROW(risk(Hypothesis::ball_union({Point{0.0, 0.0}}, 1.0), unit_pair(),
                    RiskTarget::id(), RiskMode::exact_only(), rng),
               DimensionMismatch);
}

TEST(Risk, DsaDomainAdmitsZeroRisk) {
  Rng rng(0);
  const auto d = Domain::make(DistributionSpec::uniform_ball(Point{0.0, 0.0}, 1.0),
                              DistributionSpec::uniform_annulus(Point{0.0, 0.0}, 2.0, 3.0));
  const auto h = Hypothesis::ball_union({Point{0.0, 0.0}}, 1.0);
  const auto est = risk(h, d, RiskTarget::mixed(0.5), RiskMode::exact_if_possible(5000), rng);
  EXPECT_NEAR(est.value, 0.0, 1e-12);
}

TEST(BayesFloor, OverlappingUniforms) {
  const auto d = unit_pair();
  EXPECT_NEAR(bayes_floor_1d(d.id, d.ood, 0.5), 0.25, 1e-9);
  EXPECT_NEAR(bayes_floor_1d(d.id, d.ood, 0.2), 0.1, 1e-9);
}

TEST(BayesFloor, HalfGaussianAgainstUniform) {
  // scipy quad of min(phi(x), 1/4) on [-1, 0].
  const auto in = DistributionSpec::half_gaussian(Point{0.0}, 1.0);
  const auto out = DistributionSpec::uniform_box({-1.0}, {1.0});
  EXPECT_NEAR(bayes_floor_1d(in, out, 0.5), 0.24986675829874808, 1e-7);
}

TEST(BayesFloor, TriangleAgainstUniform) {
  const auto in = DistributionSpec::holder_piecewise_1d({{0.0, 2.0}}, {1.0}, 1.0);
  const auto out = DistributionSpec::uniform_box({1.0}, {3.0});
  EXPECT_NEAR(bayes_floor_1d(in, out, 0.3), 0.13392857142857142, 1e-8);
}

TEST(BayesFloor, DisjointIsZeroAndAtomsRejected) {
  const auto in = DistributionSpec::uniform_box({0.0}, {1.0});
  EXPECT_NEAR(bayes_floor_1d(in, DistributionSpec::uniform_box({2.0}, {3.0}), 0.5), 0.0,
              1e-15);
  EXPECT_THROW(bayes_floor_1d(in, DistributionSpec::point_mass(Point{0.5}), 0.5),
               InvalidArgument);
}

TEST(LearnerConfig, Validation) {
  LearnerConfig c;
  EXPECT_NO_THROW(c.validate());
  c.epsilon = 0.5;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.alpha = 1.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  EXPECT_DOUBLE_EQ(mode_iii_epsilon(0.1, 0.3), 0.03);
  EXPECT_DOUBLE_EQ(mode_iii_epsilon(0.1, 0.8), 0.1 * (1 - 0.8));
}

TEST(SampleSource, BudgetIsEnforced) {
  Rng rng(0);
  SampleSource src(DistributionSpec::uniform_box({0.0}, {1.0}), rng, 3);
  src.draw(2);
  EXPECT_EQ(*src.remaining(), 1u);
  src.draw();
  EXPECT_THROW(src.draw(), BudgetExceeded);
  EXPECT_EQ(src.drawn(), 3u);
}
