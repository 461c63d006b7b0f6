#include <gtest/gtest.h>

#include <cmath>

#include "oodlab/errors.hpp"
#include "oodlab/learners.hpp"
#include "oodlab/risk.hpp"

using namespace oodlab;

TEST(GFunction, HolderForwardAndInverse) {
  const auto g = GFunction::holder(2.0, 3.0);
  EXPECT_DOUBLE_EQ(g(0.5), 0.75);
  EXPECT_NEAR(g.inverse(0.75), 0.5, 1e-15);
  EXPECT_TRUE(g.is_holder());
  EXPECT_THROW(holder_to_g(1.0, 0.0), InvalidArgument);
  EXPECT_THROW(holder_to_g(0.0, 1.0), InvalidArgument);
}

TEST(GFunction, TabulatedInterpolatesAndInverts) {
  const auto g = GFunction::tabulated({0.1, 0.2, 0.4}, {0.01, 0.05, 0.05});
  EXPECT_NEAR(g(0.05), 0.005, 1e-15);  // (0, 0) prepended
  EXPECT_NEAR(g(0.15), 0.03, 1e-15);
  EXPECT_NEAR(g(1.0), 0.05, 1e-15);
  EXPECT_NEAR(g.inverse(0.03), 0.15, 1e-9);
  EXPECT_GE(g.inverse(0.05), 0.4 - 1e-9);  // largest tau on the flat piece
  EXPECT_THROW(GFunction::tabulated({0.2, 0.1}, {0.0, 0.1}), InvalidArgument);
  EXPECT_THROW(GFunction::tabulated({0.1, 0.2}, {0.2, 0.1}), InvalidArgument);
}

TEST(FarOodPlan, PinnedCounts) {
  auto p = far_ood_plan(0.1, 0.1, 1.0, 1.0, 2);
  EXPECT_EQ(p.M, 9);
  EXPECT_EQ(p.N, 405);
  p = far_ood_plan(0.1, 0.1, 1.0, 2.0, 1);
  EXPECT_EQ(p.M, 1);
  EXPECT_EQ(p.N, 24);
  p = far_ood_plan(0.1, 0.1, 1.0, 0.5, 2);
  EXPECT_EQ(p.M, 36);
  EXPECT_EQ(p.N, 2119);
  EXPECT_EQ(far_ood_plan(0.05, 0.1, 1.0, 1.0, 2).N, 810);
  EXPECT_THROW(far_ood_plan(0.6, 0.1, 1.0, 1.0, 2), InvalidArgument);
}

TEST(FarOodPlan, HugeCountsThrow) {
  EXPECT_THROW(far_ood_plan(0.01, 0.1, 1.0, 1e-4, 3, 1e15), BudgetExceeded);
  EXPECT_THROW(far_ood_plan(0.01, 0.1, 1.0, 1e-3, 3), GridTooFine);
}

TEST(GridOccupancyPlan, PinnedCounts) {
  const auto g = GFunction::holder(1.0, 1.0);
  auto p = grid_occupancy_plan(0.1, 0.1, 1.0, 1, g);
  EXPECT_NEAR(p.tau, 0.025, 1e-15);
  EXPECT_EQ(p.M, 80);
  EXPECT_EQ(p.N, 5348);
  p = grid_occupancy_plan(0.2, 0.1, 1.0, 1, g);
  EXPECT_NEAR(p.tau, 0.05, 1e-15);
  EXPECT_EQ(p.M, 40);
  EXPECT_EQ(p.N, 1199);
}

TEST(GridOccupancyPlan, GridTilesTheBox) {
  const auto g = GFunction::holder(2.0, 1.0);
  for (int n = 1; n <= 3; ++n) {
    const auto p = grid_occupancy_plan(0.3, 0.2, 1.3, n, g);
    const auto grid = plan_grid(p, Point::zeros(n));
    EXPECT_NEAR(grid.side() * static_cast<double>(grid.cells_per_axis()), 2.0 * 1.3, 1e-9);
    EXPECT_EQ(std::pow(grid.cells_per_axis(), n), p.M);
    // g(tau) stays within the per-cube budget.
    const double cn = unit_ball_volume(n);
    EXPECT_LE(cn * std::pow(2 * std::sqrt(n) * 1.3, n) * g(p.tau), 0.3 * (1 + 1e-9));
  }
  EXPECT_THROW(grid_occupancy_plan(0.1, 0.1, 1.0, 1, GFunction::holder(1.0, 1e20)),
               AssumptionTooWeak);
}

TEST(DensityGridPlan, PinnedExample) {
  const auto p = density_grid_plan(0.2, 0.1, 1.0, 1, GFunction::holder(1.0, 1.0));
  EXPECT_NEAR(p.tau, 2.0 / 161.0, 1e-15);
  EXPECT_EQ(p.M, 161);
  EXPECT_NEAR(p.A / p.B, 4.025, 1e-9);
  EXPECT_NEAR(p.B, 0.00030863006828440255, 1e-15);
  EXPECT_EQ(p.N, 71776);
  EXPECT_EQ(p.count_threshold, 45);
  EXPECT_GT(p.A, 4 * p.B);
}

TEST(ConvexSchedule, PinnedCounts) {
  const auto s = convex_schedule(0.01, 0.1, 2);
  EXPECT_NEAR(s.C_delta, 3.302585092994046, 1e-12);
  EXPECT_EQ(s.M, 27848);
  EXPECT_EQ(convex_schedule(0.01, 0.01, 2).M, 55278);
  EXPECT_THROW(convex_schedule(1e-6, 0.1, 5), BudgetExceeded);
  EXPECT_EQ(convex_schedule(0.9, 0.4, 3).M >= 4, true);
}

TEST(SampleCounts, Pinned) {
  EXPECT_EQ(nonuniform_radius_samples(0.1, 0.1), 60);
}

TEST(Fits, FarOodBallsCoverSamples) {
  const std::vector<Point> s = {{0.0, 0.0}, {2.0, 0.0}};
  const auto h = far_ood_fit(s, 0.5);
  EXPECT_TRUE(h.contains(Point{0.5, 0.0}));
  EXPECT_FALSE(h.contains(Point{1.0, 0.0}));
}

TEST(Fits, GridOccupancyAndThreshold) {
  const AxisGrid grid(Point{0.0}, 0.5, 4);
  const std::vector<Point> s = {{0.1}, {0.2}, {1.7}};
  const auto occ = grid_occupancy_fit(s, grid);
  EXPECT_TRUE(occ.contains(Point{0.4}));
  EXPECT_TRUE(occ.contains(Point{1.6}));
  EXPECT_FALSE(occ.contains(Point{1.0}));
  const auto thr = count_threshold_fit(s, grid, 2);
  EXPECT_TRUE(thr.contains(Point{0.4}));
  EXPECT_FALSE(thr.contains(Point{1.6}));
  EXPECT_EQ(count_threshold_fit(s, grid, 5).kind(), Hypothesis::Kind::kEmpty);
  const std::vector<Point> far = {{9.0}};
  EXPECT_THROW(grid_occupancy_fit(far, grid), OutsideGrid);
}

TEST(Fits, DensityGridChecksSampleCount) {
  const auto p = density_grid_plan(0.2, 0.1, 1.0, 1, GFunction::holder(1.0, 1.0));
  const std::vector<Point> s = {{0.0}};
  EXPECT_THROW(density_grid_fit(s, p), InvalidArgument);
}

TEST(Learners, FarOodMeetsTargetOnSeparatedDomain) {
  // Ring at distance 2 tau from the disk: zero OOD risk, small ID risk.
  const double tau = 0.5;
  const auto d = Domain::make(DistributionSpec::uniform_ball(Point{0.0, 0.0}, 1.0),
                              DistributionSpec::uniform_annulus(Point{0.0, 0.0}, 2.0, 2.5));
  const auto learner = far_ood_learner(1.0, tau);
  LearnerConfig cfg;
  int ok = 0;
  for (int t = 0; t < 20; ++t) {
    Rng rng(100 + t);
    SampleSource src(d.id, rng);
    const auto h = learner.fit(cfg, src);
    EXPECT_EQ(src.drawn(), 2119u);
    const auto out = risk(h, d, RiskTarget::ood(), RiskMode::exact_if_possible(4000), rng);
    EXPECT_EQ(out.value, 0.0);
    const auto in = risk(h, d, RiskTarget::id(), RiskMode::monte_carlo(4000), rng);
    ok += in.value <= cfg.epsilon ? 1 : 0;
  }
  EXPECT_GE(ok, 18);
}

TEST(Learners, GridOccupancyOnUniformBox) {
  const auto d = Domain::make(DistributionSpec::uniform_box({-1.0}, {0.0}),
                              DistributionSpec::uniform_box({0.5}, {1.0}));
  const auto learner = grid_occupancy_learner(1.0, GFunction::holder(1.0, 1.0));
  LearnerConfig cfg;
  Rng rng(3);
  SampleSource src(d.id, rng);
  const auto h = learner.fit(cfg, src);
  EXPECT_EQ(src.drawn(), 5348u);
  EXPECT_LE(risk(h, d, RiskTarget::id(), RiskMode::exact_only(), rng).value, 0.1);
  EXPECT_LE(risk(h, d, RiskTarget::ood(), RiskMode::exact_only(), rng).value, 1e-12);
}

TEST(Learners, ConvexHullSeparatesDisjointConvexSets) {
  const auto d = Domain::make(DistributionSpec::uniform_box({0.0, 0.0}, {1.0, 1.0}),
                              DistributionSpec::uniform_box({1.5, 0.0}, {2.5, 1.0}));
  const auto learner = convex_hull_learner(0.05, 2);
  LearnerConfig cfg;
  Rng rng(4);
  SampleSource src(d.id, rng);
  const auto h = learner.fit(cfg, src);
  EXPECT_EQ(static_cast<std::int64_t>(src.drawn()), convex_schedule(0.05, 0.1, 2).M);
  EXPECT_EQ(risk(h, d, RiskTarget::ood(), RiskMode::exact_only(), rng).value, 0.0);
  EXPECT_LE(risk(h, d, RiskTarget::id(), RiskMode::exact_only(), rng).value, 0.05);
}

TEST(Learners, NonuniformFindsRadius) {
  const auto d = Domain::make(DistributionSpec::uniform_ball(Point{5.0, 5.0}, 1.0),
                              DistributionSpec::uniform_annulus(Point{5.0, 5.0}, 3.0, 3.5));
  NonuniformParams p;
  p.tau = 0.5;
  Rng rng(6);
  SampleSource src(d.id, rng);
  const auto r = nonuniform_fit(p, 0.2, 0.2, src);
  EXPECT_EQ(r.n_radius, nonuniform_radius_samples(0.2, 0.2));
  EXPECT_LE(r.radius, 2.0 + 1e-12);
  EXPECT_GT(r.radius, 0.5);
  EXPECT_LE(r.n_kept, r.n_base);
  EXPECT_GT(r.n_kept, r.n_base * 8 / 10);
  EXPECT_EQ(risk(r.h, d, RiskTarget::ood(), RiskMode::exact_if_possible(2000), rng).value, 0.0);
}

TEST(Learners, FixedBudgetLearnersRespectRemaining) {
  Rng rng(0);
  SampleSource src(DistributionSpec::uniform_box({0.0}, {1.0}), rng, 4);
  LearnerConfig cfg;
  memorize_learner(10).fit(cfg, src);
  EXPECT_EQ(src.drawn(), 4u);
  EXPECT_EQ(always_all_learner().fit(cfg, src).kind(), Hypothesis::Kind::kAll);
  EXPECT_EQ(always_empty_learner().fit(cfg, src).kind(), Hypothesis::Kind::kEmpty);
}

TEST(Learners, ModeIiiShrinksEpsilon) {
  LearnerConfig cfg;
  cfg.alpha = 0.2;
  double seen = 0.0;
  Learner probe{"probe", [&](const LearnerConfig& c, SampleSource&) {
                  seen = c.epsilon;
                  return Hypothesis::empty();
                }};
  Rng rng(0);
  SampleSource src(DistributionSpec::uniform_box({0.0}, {1.0}), rng);
  mode_iii_wrap(probe, cfg).fit(cfg, src);
  EXPECT_DOUBLE_EQ(seen, 0.02);
}
