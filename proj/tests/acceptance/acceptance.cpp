// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oodlab/oodlab.hpp"

using namespace oodlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double threshold(double delta, std::size_t trials) {
  return 1.0 - delta - 3.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(trials));
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

/// Number of OOD probes the hypothesis accepts.
std::size_t ood_hits(const Hypothesis& h, const Domain& d, std::size_t probes, Rng& rng) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < probes; ++i) hits += h.contains(sample(d.ood, rng)) ? 1 : 0;
  return hits;
}

constexpr std::size_t kProbes = 10000;
constexpr std::size_t kTrials = 200;

Domain disk_vs_ring(double tau) {
  const double r = 1.0 + 2.0 * tau;
  return Domain::make(DistributionSpec::uniform_ball(Point{0.0, 0.0}, 1.0),
                      DistributionSpec::uniform_annulus(Point{0.0, 0.0}, r, r + 0.5));
}

Domain square_vs_ring() {
  return Domain::make(DistributionSpec::uniform_box({0.0, 0.0}, {1.0, 1.0}),
                      DistributionSpec::uniform_annulus(Point{0.5, 0.5}, 0.75, 1.25));
}

DistributionSpec uniform_on(const std::vector<std::int64_t>& xs) {
  std::vector<Point> pts;
  for (auto x : xs) pts.push_back(Point::discrete(x));
  return DistributionSpec::finite_support(
      pts, std::vector<double>(xs.size(), 1.0 / static_cast<double>(xs.size())));
}

/// Fraction of trials with mixed risk at most eps; counts OOD probe hits too.
struct ContractRun {
  double success = 0.0;
  std::size_t ood_hits = 0;
  std::int64_t n_used = 0;
};

ContractRun contract(const Learner& l, const Domain& d, const LearnerConfig& cfg,
                     std::uint64_t seed, RiskMode mode, std::size_t probes = 0) {
  ContractRun r;
  std::size_t ok = 0;
  for (std::size_t t = 0; t < kTrials; ++t) {
    Rng rng(seed + t);
    SampleSource src(d.id, rng);
    LearnerConfig c = cfg;
    c.seed = seed + t;
    const Hypothesis h = l.fit(c, src);
    r.n_used = static_cast<std::int64_t>(src.drawn());
    const auto est = risk(h, d, RiskTarget::mixed(cfg.alpha), mode, rng);
    ok += est.value <= cfg.epsilon ? 1 : 0;
    if (probes > 0) r.ood_hits += ood_hits(h, d, probes, rng);
  }
  r.success = static_cast<double>(ok) / static_cast<double>(kTrials);
  return r;
}

// ---------------------------------------------------------------------------

Outcome ac01() {
  LearnerConfig cfg;
  std::size_t hits = 0, trials = 0;

  const auto disk = disk_vs_ring(0.5);
  const auto far = far_ood_learner(1.0, 0.5);
  for (std::size_t t = 0; t < kTrials; ++t, ++trials) {
    Rng rng(1000 + t);
    SampleSource src(disk.id, rng);
    hits += ood_hits(far.fit(cfg, src), disk, kProbes, rng);
  }
  const std::size_t far_hits = hits;

  const auto sq = square_vs_ring();
  const auto hull = convex_hull_learner(0.05, 2);
  for (std::size_t t = 0; t < kTrials; ++t, ++trials) {
    Rng rng(2000 + t);
    SampleSource src(sq.id, rng);
    hits += ood_hits(hull.fit(cfg, src), sq, kProbes, rng);
  }
  const std::size_t hull_hits = hits - far_hits;

  // 20 random spaces on 8 points, 10 trials each.
  Rng gen(3);
  for (int s = 0; s < 20; ++s) {
    std::vector<std::int64_t> universe = {0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<Domain> ds;
    while (ds.size() < 6) {
      std::vector<std::int64_t> id, ood;
      for (std::int64_t x = 0; x < 8; ++x) {
        const auto u = gen() % 3;
        if (u == 0) id.push_back(x);
        if (u == 1) ood.push_back(x);
      }
      if (id.empty() || ood.empty()) continue;
      ds.push_back(Domain::make(uniform_on(id), uniform_on(ood), {}, true));
    }
    const FiniteDomainSpace space(universe, ds);
    for (int t = 0; t < 10; ++t, ++trials) {
      Rng rng(3000 + 10 * s + t);
      const auto& d = space.domains()[rng() % space.size()];
      const auto samples = sample_n(d.id, 5, rng);
      hits += ood_hits(maximal_zero_ood_fit(space, samples).h, d, kProbes, rng);
    }
  }

  // 10 chain families: base 0, chain 1..k, domain j has ID {0..j}, OOD {j+1}.
  for (std::int64_t k = 1; k <= 10; ++k) {
    std::vector<std::int64_t> universe;
    for (std::int64_t x = 0; x <= k + 1; ++x) universe.push_back(x);
    std::vector<Domain> ds;
    for (std::int64_t j = 0; j <= k; ++j) {
      std::vector<std::int64_t> id;
      for (std::int64_t x = 0; x <= j; ++x) id.push_back(x);
      ds.push_back(Domain::make(uniform_on(id), uniform_on({j + 1}), {}, true));
    }
    const FiniteDomainSpace space(universe, ds);
    const auto oracle = TwoPointOracle::brute_force(space);
    for (int t = 0; t < 20; ++t, ++trials) {
      Rng rng(4000 + 100 * k + t);
      const auto& d = space.domains()[rng() % space.size()];
      SampleSource src(d.id, rng);
      const auto r = tree_order_fit(space, oracle, space.domains()[0], 0.1, 0.1, src);
      hits += ood_hits(r.h, d, kProbes, rng);
    }
  }
  return {hits == 0 && trials == 800,
          std::to_string(trials) + " trials x 1e4 OOD probes, accepted probes = " +
              std::to_string(hits) + " (far " + std::to_string(far_hits) + ", hull " +
              std::to_string(hull_hits) + ")"};
}

Outcome ac02() {
  LearnerConfig cfg;
  const auto plan = far_ood_plan(0.1, 0.1, 1.0, 0.5, 2);
  const auto r = contract(far_ood_learner(1.0, 0.5), disk_vs_ring(0.5), cfg, 20000,
                          RiskMode::exact_if_possible(10000));
  const double thr = threshold(0.1, kTrials);
  return {plan.N == 2119 && r.n_used == plan.N && r.success >= thr,
          "N = " + std::to_string(plan.N) + ", success " + fmt("%.3f", r.success) +
              " >= " + fmt("%.4f", thr)};
}

Outcome ac03() {
  LearnerConfig cfg;
  cfg.epsilon = 0.2;
  const auto g = holder_to_g(1.0, 1.0);
  const auto plan = grid_occupancy_plan(0.2, 0.1, 1.0, 1, g);
  const auto d = Domain::make(DistributionSpec::uniform_box({-0.9}, {-0.01}),
                              DistributionSpec::holder_piecewise_1d({{0.0, 3.0}}, {1.0}, 1.0));
  const auto r = contract(grid_occupancy_learner(1.0, g), d, cfg, 30000, RiskMode::exact_only());
  const double thr = threshold(0.1, kTrials);
  return {r.success >= thr, "tau = " + fmt("%.4g", plan.tau) + ", M = " +
                                std::to_string(plan.M) + ", N = " + std::to_string(plan.N) +
                                ", success " + fmt("%.3f", r.success) + " >= " +
                                fmt("%.4f", thr)};
}

Outcome ac04() {
  LearnerConfig cfg;
  cfg.epsilon = 0.2;
  const auto g = holder_to_g(1.0, 1.0);
  const auto plan = density_grid_plan(0.2, 0.1, 2.5, 1, g);
  const auto d = Domain::make(DistributionSpec::holder_piecewise_1d({{0.0, 2.4}}, {1.0}, 1.0),
                              DistributionSpec::point_mass(Point{2.402}));
  const auto r = contract(density_grid_learner(2.5, g), d, cfg, 40000, RiskMode::exact_only());
  const double thr = threshold(0.1, kTrials);
  const bool separated = plan.A > 4.0 * plan.B;
  return {separated && r.success >= thr,
          "M = " + std::to_string(plan.M) + ", N = " + std::to_string(plan.N) +
              ", threshold " + std::to_string(plan.count_threshold) + ", A/B = " +
              fmt("%.4f", plan.A / plan.B) + ", success " + fmt("%.3f", r.success) + " >= " +
              fmt("%.4f", thr)};
}

Outcome ac05() {
  LearnerConfig cfg;
  const auto n1 = nonuniform_radius_samples(0.1, 0.1);
  NonuniformParams p;
  p.base = BaseLearner::kFarOod;
  p.tau = 1.0;
  const auto d = Domain::make(DistributionSpec::half_gaussian(Point{0.0, 0.0}, 1.0, 0),
                              DistributionSpec::uniform_box({1.5, -1.0}, {3.5, 1.0}));
  const auto r = contract(nonuniform_learner(p), d, cfg, 50000,
                          RiskMode::exact_if_possible(10000), 0);
  const double thr = threshold(0.1, kTrials);
  return {n1 == 60 && r.success >= thr, "N1 = " + std::to_string(n1) + ", success " +
                                            fmt("%.3f", r.success) + " >= " +
                                            fmt("%.4f", thr)};
}

Outcome ac06() {
  LearnerConfig cfg;
  // Depth level holding 1 - eps/2 of U(square), from a Monte Carlo depth sample.
  Rng cal(6);
  const auto sq = square_vs_ring();
  const auto ref = sample_n(sq.id, 4000, cal);
  std::vector<double> depths;
  for (const auto& p : sample_n(sq.id, 2000, cal)) depths.push_back(tukey_depth(ref, p));
  std::sort(depths.begin(), depths.end());
  const double lambda = depths[static_cast<std::size_t>(0.05 * depths.size())];
  const auto sched = convex_schedule(lambda, 0.1, 2);
  const auto r = contract(convex_hull_learner(lambda, 2), sq, cfg, 60000,
                          RiskMode::exact_if_possible(10000), kProbes);
  const double thr = threshold(0.1, kTrials);
  return {r.success >= thr && r.ood_hits == 0,
          "lambda = " + fmt("%.5f", lambda) + ", M = " + std::to_string(sched.M) +
              ", success " + fmt("%.3f", r.success) + " >= " + fmt("%.4f", thr) +
              ", OOD probe hits " + std::to_string(r.ood_hits)};
}

Outcome ac07() {
  bool ok = true;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (double a : {0.2, 0.5, 0.8}) {
      ok = ok && nfl_bayes_exact(n, a, 0.0) >= std::min((1.0 - a) / 2.0, a);
    }
  }
  const std::size_t N = 4;
  const auto fam = AdversarialFamily::nfl(N, 0.0);
  const std::vector<Learner> learners = {always_all_learner(), always_empty_learner(),
                                         memorize_learner(N), fixed_far_ood_learner(0.4, N),
                                         fixed_convex_hull_learner(N)};
  LearnerConfig cfg;
  std::string detail = "floor 0.25;";
  for (const auto& l : learners) {
    const auto rep = run_game(fam, l, cfg, 500, 0.5, 70000);
    ok = ok && rep.all_exact && rep.mean >= *rep.exact_bound - rep.ci;
    detail += " " + l.name + " " + fmt("%.3f", rep.mean);
  }
  ok = ok && std::abs(nfl_floor(0.5, 0.0) - 0.25) < 1e-15;
  return {ok, detail};
}

Outcome ac08() {
  LearnerConfig cfg;
  cfg.alpha = 0.5;
  std::string detail;
  bool ok = true;
  const std::vector<double> gaps = {0.1, 0.05, 0.02, 0.01};
  for (double tau : {0.2, 0.05, 0.01}) {
    detail += " tau " + fmt("%g", tau) + ":";
    for (double gap : gaps) {
      const auto fam = AdversarialFamily::dsa_gap(gap);
      const auto rep = run_game(fam, fixed_far_ood_learner(tau, 200), cfg, 500, 0.5, 80000);
      detail += " " + fmt("%.3f", rep.mean);
      if (gap == gaps.back()) ok = ok && rep.mean >= 0.25 - 0.05;
    }
  }
  return {ok, "mean risk per gap" + detail};
}

Outcome ac09() {
  constexpr double kLambda = 0.05;
  const auto id = DistributionSpec::heavy_boundary_circle(kLambda);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    Rng rng(90000 + t);
    const auto pts = sample_n(id, 10000, rng);
    const auto h = Hypothesis::convex_hull(pts, 0.0);
    std::size_t inside = 0;
    constexpr std::size_t kM = 100000;
    for (std::size_t i = 0; i < kM; ++i) inside += h.contains(sample(id, rng)) ? 1 : 0;
    worst = std::max(worst, static_cast<double>(inside) / kM);
  }
  return {worst <= kLambda + 0.02,
          "largest hull mass " + fmt("%.4f", worst) + " <= " + fmt("%.2f", kLambda + 0.02)};
}

Outcome ac10() {
  Rng rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t agree = 0;
  constexpr std::size_t kChecks = 1000;
  for (std::size_t i = 0; i < kChecks; ++i) {
    auto [d, h] = [&]() -> std::pair<Domain, Hypothesis> {
    switch (i % 4) {
      case 0: {
        auto d = Domain::make(DistributionSpec::uniform_box({0.0}, {1.0}),
                         DistributionSpec::uniform_box({0.5}, {1.5}));
        const double a = u(rng), b = a + u(rng);
        return {d, Hypothesis::interval_set({{a, b}})};
      }
      case 1: {
        auto d = Domain::make(DistributionSpec::holder_piecewise_1d({{0.0, 2.0}}, {1.0}, 1.0),
                         DistributionSpec::half_gaussian(Point{3.0}, 0.5));
        return {d, Hypothesis::ball_union({Point{2.0 * u(rng)}, Point{3.0 * u(rng)}}, 0.4 * u(rng))};
      }
      case 2: {
        auto d = Domain::make(DistributionSpec::uniform_box({0.0, 0.0}, {1.0, 1.0}),
                         DistributionSpec::uniform_ball(Point{1.0, 1.0}, 0.8));
        std::vector<Point> v;
        for (int k = 0; k < 5; ++k) v.push_back(Point{1.5 * u(rng), 1.5 * u(rng)});
        return {d, Hypothesis::convex_hull(v)};
      }
      default: {
        auto d = Domain::make(DistributionSpec::heavy_boundary_circle(0.3),
                         DistributionSpec::uniform_box({-1.0, -1.0}, {1.0, 1.0}));
        std::vector<Point> v;
        for (int k = 0; k < 4; ++k) {
          const double ang = 6.283185307179586 * u(rng), r = std::sqrt(u(rng));
          v.push_back(Point{r * std::cos(ang), r * std::sin(ang)});
        }
        return {d, Hypothesis::convex_hull(v)};
      }
    }
    }();
    const double alpha = u(rng);
    const auto exact = risk(h, d, RiskTarget::mixed(alpha), RiskMode::exact_only(), rng);
    const auto mc = risk(h, d, RiskTarget::mixed(alpha), RiskMode::monte_carlo(10000), rng);
    agree += std::abs(exact.value - mc.value) <= mc.ci_half_width ? 1 : 0;
  }
  const double floor = bayes_floor_1d(DistributionSpec::uniform_box({0.0}, {1.0}),
                                      DistributionSpec::uniform_box({0.5}, {1.5}), 0.5);
  const double frac = static_cast<double>(agree) / kChecks;
  return {frac >= 0.999 && std::abs(floor - 0.25) <= 1e-6,
          "agreement " + std::to_string(agree) + "/1000, floor " + fmt("%.9f", floor)};
}

Outcome ac11() {
  const auto fam = AdversarialFamily::naturals_vc1(6);
  std::vector<Point> universe;
  for (std::int64_t x = 1; x <= 6; ++x) universe.push_back(Point::discrete(x));
  std::vector<FiniteSupportPair> space;
  std::vector<bool> seen(7, false);
  Rng rng(11);
  while (std::count(seen.begin() + 1, seen.end(), true) < 6) {
    const auto d = fam.draw(rng);
    const auto m = sample(d.ood, rng).index();
    if (seen[static_cast<std::size_t>(m)]) continue;
    seen[static_cast<std::size_t>(m)] = true;
    space.push_back(support_pair(d, universe));
  }
  const auto vin = vc_dimension_sets(id_supports(space), universe);
  const auto vout = vc_dimension_sets(ood_supports(space), universe);
  return {vin == 1 && vout == 1,
          "VC(ID supports) = " + std::to_string(vin) + ", VC(OOD supports) = " +
              std::to_string(vout)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> checks = {
      {"AC-01 zero OOD risk (far, hull, max-zero, tree order)", ac01},
      {"AC-02 far-OOD learner contract", ac02},
      {"AC-03 grid-occupancy learner contract", ac03},
      {"AC-04 density-grid learner contract", ac04},
      {"AC-05 non-uniform wrapper", ac05},
      {"AC-06 convex-hull learner", ac06},
      {"AC-07 NFL lower bound", ac07},
      {"AC-08 DSA gap exhibit", ac08},
      {"AC-09 heavy-boundary hull mass", ac09},
      {"AC-10 risk machinery", ac10},
      {"AC-11 VC of the naturals family", ac11},
  };
  int failed = 0;
  for (const auto& [name, fn] : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), s);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failed, checks.size());
  return failed == 0 ? 0 : 1;
}
