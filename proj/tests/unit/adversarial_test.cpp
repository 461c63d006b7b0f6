#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "oodlab/adversarial.hpp"
#include "oodlab/errors.hpp"
#include "oodlab/learners.hpp"

using namespace oodlab;

namespace {

// Enumerates every ID split and every draw sequence; the posterior-optimal
// hypothesis keeps an unseen point iff its expected ID loss exceeds its
// expected OOD loss given the observed points.
double nfl_bayes_brute(int N, double alpha, double e) {
  const int P = 3 * N;
  std::vector<unsigned> masks;
  for (unsigned m = 0; m < (1u << P); ++m) {
    if (std::popcount(m) == 2 * N) masks.push_back(m);
  }
  const double in_w = (1 - e) / (2 * N), out_w = (1 - e) / N;
  int seqs = 1;
  for (int i = 0; i < N; ++i) seqs *= 2 * N + 1;  // slot 2N is the leftover atom
  double total = 0.0;
  for (unsigned mask : masks) {
    std::vector<int> id_pts;
    for (int x = 0; x < P; ++x) {
      if (mask >> x & 1u) id_pts.push_back(x);
    }
    for (int s = 0; s < seqs; ++s) {
      double prob = 1.0;
      unsigned seen = 0;
      for (int i = 0, c = s; i < N; ++i, c /= 2 * N + 1) {
        const int slot = c % (2 * N + 1);
        if (slot == 2 * N) {
          prob *= e;
        } else {
          prob *= in_w;
          seen |= 1u << id_pts[slot];
        }
      }
      if (prob == 0.0) continue;
      int consistent = 0;
      std::vector<int> id_count(P, 0);
      for (unsigned m2 : masks) {
        if ((m2 & seen) != seen) continue;
        ++consistent;
        for (int x = 0; x < P; ++x) id_count[x] += (m2 >> x & 1u) ? 1 : 0;
      }
      double loss = 0.0;
      for (int x = 0; x < P; ++x) {
        if (seen >> x & 1u) continue;
        const double p_in = static_cast<double>(id_count[x]) / consistent;
        const bool keep = (1 - alpha) * p_in * in_w > alpha * (1 - p_in) * out_w;
        const bool is_id = mask >> x & 1u;
        if (is_id && !keep) loss += (1 - alpha) * in_w;
        if (!is_id && keep) loss += alpha * out_w;
      }
      total += prob * loss / static_cast<double>(masks.size());
    }
  }
  return total;
}

}  // namespace

TEST(NflBayesExact, FrozenValues) {
  EXPECT_NEAR(nfl_bayes_exact(1, 0.2, 0.0), 0.2, 1e-15);
  EXPECT_NEAR(nfl_bayes_exact(1, 0.5, 0.0), 0.25, 1e-15);
  EXPECT_NEAR(nfl_bayes_exact(1, 0.8, 0.0), 0.1, 1e-15);
  EXPECT_NEAR(nfl_bayes_exact(1, 0.5, 0.1), 0.2475, 1e-15);
  EXPECT_NEAR(nfl_bayes_exact(2, 0.5, 0.0), 0.28125, 1e-15);
  EXPECT_NEAR(nfl_bayes_exact(2, 0.8, 0.0), 0.1125, 1e-15);
  EXPECT_NEAR(nfl_bayes_exact(2, 0.5, 0.1), 0.27028125, 1e-15);
  EXPECT_NEAR(nfl_bayes_exact(3, 0.5, 0.0), 0.28935185185185186, 1e-15);
  EXPECT_NEAR(nfl_bayes_exact(3, 0.8, 0.0), 0.11574074074074074, 1e-15);
  EXPECT_NEAR(nfl_bayes_exact(3, 0.5, 0.01), 0.288180523125, 1e-14);
  EXPECT_NEAR(nfl_bayes_exact(4, 0.5, 0.0), 0.2930908203125, 1e-15);
  EXPECT_NEAR(nfl_bayes_exact(4, 0.5, 0.01), 0.29182152511351317, 1e-14);
  EXPECT_NEAR(nfl_bayes_exact(8, 0.5, 0.0), 0.2983597369166091, 1e-14);
  EXPECT_THROW(nfl_bayes_exact(9, 0.5, 0.0), InvalidArgument);
}

TEST(NflBayesExact, MatchesEnumeration) {
  for (int N : {1, 2}) {
    for (double a : {0.2, 0.5, 0.8}) {
      for (double e : {0.0, 0.1, 0.01}) {
        EXPECT_NEAR(nfl_bayes_exact(N, a, e), nfl_bayes_brute(N, a, e), 1e-14)
            << N << " " << a << " " << e;
      }
    }
  }
}

TEST(NflBayesExact, NeverBelowFloor) {
  for (std::size_t N = 1; N <= 8; ++N) {
    for (double a = 0.05; a < 1.0; a += 0.05) {
      EXPECT_GE(nfl_bayes_exact(N, a, 0.0) + 1e-15, nfl_floor(a, 0.0));
    }
  }
}

TEST(NflDomain, MassesAndSupports) {
  const std::vector<bool> mask = {true, false, true, true, false, false};
  const auto d = nfl_domain(2, 0.1, mask);
  EXPECT_TRUE(support_contains(d.id, Point{0.0}));
  EXPECT_TRUE(support_contains(d.id, Point{-10.0}));
  EXPECT_FALSE(support_contains(d.id, Point{1.0}));
  EXPECT_TRUE(support_contains(d.ood, Point{16.0}));
  const auto m = region_mass(d.id, Hypothesis::interval_set({{-0.5, 0.5}}));
  EXPECT_NEAR(*m, 0.9 / 3, 1e-15);
  const auto m2 = region_mass(d.ood, Hypothesis::interval_set({{0.5, 1.5}}));
  EXPECT_NEAR(*m2, 0.9 / 3, 1e-15);
  EXPECT_THROW(nfl_domain(2, 0.0, {true}), InvalidArgument);
}

TEST(Families, DrawsSatisfyDsa) {
  Rng rng(17);
  const std::vector<AdversarialFamily> fams = {
      AdversarialFamily::nfl(3, 0.01),
      AdversarialFamily::generalized_nfl({{Point{0.0}}, {Point{1.0}, Point{1.5}}, {Point{4.0}}}),
      AdversarialFamily::dsa_gap(0.05),
      AdversarialFamily::heavy_boundary_wedge(0.3, 0.1),
      AdversarialFamily::naturals_vc1(6),
      AdversarialFamily::holder_intervals(6, 1.0),
      AdversarialFamily::convex_ngon(6, 0.05),
  };
  for (const auto& f : fams) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto d = f.draw(rng);
      auto probes = sample_n(d.id, 300, rng);
      const auto more = sample_n(d.ood, 300, rng);
      probes.insert(probes.end(), more.begin(), more.end());
      ASSERT_TRUE(dsa_holds_on(d, probes)) << f.name();
    }
  }
}

TEST(Families, BudgetsAndBounds) {
  EXPECT_EQ(*AdversarialFamily::nfl(4).budget(), 4u);
  EXPECT_FALSE(AdversarialFamily::dsa_gap(0.1).budget());
  EXPECT_EQ(*AdversarialFamily::naturals_vc1(6).budget(), 2u);
  EXPECT_EQ(*AdversarialFamily::holder_intervals(9, 1.0).budget(), 3u);
  EXPECT_NEAR(*AdversarialFamily::nfl(2, 0.1).exact_bound(0.5), 0.225, 1e-15);
  EXPECT_NEAR(*AdversarialFamily::dsa_gap(0.1).exact_bound(0.3), 0.21, 1e-15);
  EXPECT_FALSE(AdversarialFamily::heavy_boundary_wedge(0.1, 0.1).exact_bound(0.5));
  EXPECT_NEAR(*AdversarialFamily::convex_ngon(6, 0.05).exact_bound(0.5),
              std::pow(0.99, 3) * 0.25, 1e-15);
  EXPECT_NEAR(*AdversarialFamily::naturals_vc1(4).exact_bound(0.2), 0.2, 1e-15);
}

TEST(Families, FactoriesValidate) {
  EXPECT_THROW(AdversarialFamily::nfl(0), InvalidArgument);
  EXPECT_THROW(AdversarialFamily::naturals_vc1(5), InvalidArgument);
  EXPECT_THROW(AdversarialFamily::holder_intervals(4, 1.0), InvalidArgument);
  EXPECT_THROW(AdversarialFamily::holder_intervals(3, 0.1), InvalidArgument);
  EXPECT_THROW(AdversarialFamily::convex_ngon(6, 0.3), InvalidArgument);
  EXPECT_THROW(AdversarialFamily::generalized_nfl({{Point{0.0}}, {Point{0.0}}, {Point{1.0}}}),
               InvalidArgument);
}

TEST(Families, JsonRoundTrip) {
  const std::vector<AdversarialFamily> fams = {
      AdversarialFamily::nfl(3, 0.01),
      AdversarialFamily::generalized_nfl({{Point{0.0}}, {Point{1.0}}, {Point{4.0}}}, 0.05),
      AdversarialFamily::dsa_gap(0.05),
      AdversarialFamily::heavy_boundary_wedge(0.3, 0.1),
      AdversarialFamily::naturals_vc1(6),
      AdversarialFamily::holder_intervals(6, 1.0),
      AdversarialFamily::convex_ngon(6, 0.05, 0.02),
  };
  for (const auto& f : fams) {
    const auto j = to_json(f);
    EXPECT_EQ(to_json(family_from_json(j)), j) << j.dump();
  }
  EXPECT_THROW(family_from_json(nlohmann::json{{"kind", "nope"}}), InvalidArgument);
}

TEST(RunGame, ConstantLearnersPayAlphaOrOneMinusAlpha) {
  const auto fam = AdversarialFamily::nfl(3);
  LearnerConfig cfg;
  const auto all = run_game(fam, always_all_learner(), cfg, 50, 0.3, 7);
  const auto none = run_game(fam, always_empty_learner(), cfg, 50, 0.3, 7);
  EXPECT_TRUE(all.all_exact);
  EXPECT_NEAR(all.mean, 0.3, 1e-12);
  EXPECT_NEAR(none.mean, 0.7, 1e-12);
  EXPECT_NEAR(*all.exact_bound, 0.3, 1e-15);
  EXPECT_NEAR(all.ci, hoeffding_half_width(50), 1e-15);
}

TEST(RunGame, BudgetIsEnforced) {
  const auto fam = AdversarialFamily::nfl(2);
  LearnerConfig cfg;
  Learner greedy{"greedy", [](const LearnerConfig&, SampleSource& s) {
                   s.draw(3);
                   return Hypothesis::empty();
                 }};
  EXPECT_THROW(run_game(fam, greedy, cfg, 3, 0.5, 0), BudgetExceeded);
}

TEST(RunGame, ResultsIndependentOfThreadCount) {
  const auto fam = AdversarialFamily::nfl(4);
  LearnerConfig cfg;
  const auto a = run_game(fam, memorize_learner(4), cfg, 40, 0.5, 11, RiskMode::exact_only(), 1);
  const auto b = run_game(fam, memorize_learner(4), cfg, 40, 0.5, 11, RiskMode::exact_only(), 3);
  ASSERT_EQ(a.trials.size(), b.trials.size());
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    EXPECT_EQ(a.trials[i].r_alpha, b.trials[i].r_alpha);
    EXPECT_EQ(a.trials[i].seed, 11 + i);
  }
  EXPECT_EQ(a.mean, b.mean);
}

TEST(RunGame, MemorizerStaysAboveBayesRisk) {
  const auto fam = AdversarialFamily::nfl(2);
  LearnerConfig cfg;
  const auto rep = run_game(fam, memorize_learner(2), cfg, 400, 0.5, 3);
  EXPECT_GE(rep.mean + rep.ci, nfl_bayes_exact(2, 0.5, 0.0));
}
