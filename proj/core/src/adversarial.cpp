#include "oodlab/adversarial.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

#include <nlohmann/json.hpp>

#include "oodlab/errors.hpp"
#include "oodlab/parallel.hpp"

namespace oodlab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidArgument(msg);
}

double nfl_min(double alpha) { return std::min((1.0 - alpha) / 2.0, alpha); }

/// Uniform random subset of size k out of n, as a mask.
std::vector<bool> random_subset(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  std::vector<bool> mask(n, false);
  for (std::size_t i = 0; i < k; ++i) mask[idx[i]] = true;
  return mask;
}

/// Spreads (1 - eps) evenly over `points` and eps on `leftover`.
DistributionSpec spread(const std::vector<Point>& points, double eps, const Point& leftover) {
  if (points.empty()) return DistributionSpec::point_mass(leftover);
  std::vector<Point> pts = points;
  std::vector<double> probs(points.size(), (1.0 - eps) / static_cast<double>(points.size()));
  if (eps > 0.0) {
    pts.push_back(leftover);
    probs.push_back(eps);
  }
  return DistributionSpec::finite_support(std::move(pts), std::move(probs));
}

Point with_first(const Point& like, double x0) {
  std::vector<double> c(like.dim(), 0.0);
  c[0] = x0;
  return Point(c);
}

Domain generalized_domain(const family::GeneralizedNfl& g, const std::vector<bool>& in_id) {
  std::vector<Point> id_pts, ood_pts;
  std::size_t n_id = 0, n_ood = 0;
  for (const auto b : in_id) (b ? n_id : n_ood)++;
  std::vector<double> id_probs, ood_probs;
  for (std::size_t i = 0; i < g.sets.size(); ++i) {
    const auto& set = g.sets[i];
    const bool id = in_id[i];
    const double each = (1.0 - g.eps_mass) / static_cast<double>(id ? n_id : n_ood) /
                        static_cast<double>(set.size());
    for (const auto& p : set) {
      (id ? id_pts : ood_pts).push_back(p);
      (id ? id_probs : ood_probs).push_back(each);
    }
  }
  const Point& any = g.sets.front().front();
  Point left_id, left_ood;
  if (any.is_discrete()) {
    std::int64_t hi = any.index();
    for (const auto& s : g.sets) {
      for (const auto& p : s) hi = std::max(hi, p.index());
    }
    left_id = Point::discrete(hi + 1);
    left_ood = Point::discrete(hi + 2);
  } else {
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& s : g.sets) {
      for (const auto& p : s) {
        for (double c : p.coords()) hi = std::max(hi, std::fabs(c));
      }
    }
    left_id = with_first(any, hi + 10.0);
    left_ood = with_first(any, hi + 20.0);
  }
  auto make = [&](std::vector<Point> pts, std::vector<double> probs, const Point& left,
                  std::size_t groups) {
    if (groups == 0) return DistributionSpec::point_mass(left);
    if (g.eps_mass > 0.0) {
      pts.push_back(left);
      probs.push_back(g.eps_mass);
    }
    return DistributionSpec::finite_support(std::move(pts), std::move(probs));
  };
  return Domain::make(make(id_pts, id_probs, left_id, n_id),
                      make(ood_pts, ood_probs, left_ood, n_ood), "generalized_nfl", true);
}

Point polar(double r, double angle) { return Point{r * std::cos(angle), r * std::sin(angle)}; }

double ngon_radius(std::size_t n) {
  return 1.0 / (2.0 * std::sin(std::numbers::pi / static_cast<double>(n)));
}

}  // namespace

// ---------------------------------------------------------------------------
// Factories

AdversarialFamily AdversarialFamily::nfl(std::size_t budget, double eps_mass) {
  require(budget >= 1, "nfl: budget must be >= 1");
  require(eps_mass >= 0.0 && eps_mass < 1.0, "nfl: eps_mass must be in [0, 1)");
  return AdversarialFamily(family::Nfl{budget, eps_mass});
}

AdversarialFamily AdversarialFamily::generalized_nfl(std::vector<std::vector<Point>> sets,
                                                     double eps_mass) {
  require(!sets.empty() && sets.size() % 3 == 0,
          "generalized_nfl: the number of sets must be a positive multiple of 3");
  require(eps_mass >= 0.0 && eps_mass < 1.0, "generalized_nfl: eps_mass must be in [0, 1)");
  std::vector<Point> all;
  for (auto& s : sets) {
    require(!s.empty(), "generalized_nfl: empty set");
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (const auto& p : s) {
      require_same_space(p, sets.front().front());
      all.push_back(p);
    }
  }
  std::sort(all.begin(), all.end());
  require(std::adjacent_find(all.begin(), all.end()) == all.end(),
          "generalized_nfl: sets must be disjoint");
  return AdversarialFamily(family::GeneralizedNfl{std::move(sets), eps_mass});
}

AdversarialFamily AdversarialFamily::dsa_gap(double eps_gap) {
  require(eps_gap > 0.0 && eps_gap < 1.0, "dsa_gap: eps_gap must be in (0, 1)");
  return AdversarialFamily(family::DsaGap{eps_gap});
}

AdversarialFamily AdversarialFamily::heavy_boundary_wedge(double eps_angle, double lambda) {
  require(eps_angle > 0.0 && eps_angle < std::numbers::pi,
          "heavy_boundary_wedge: eps_angle must be in (0, pi)");
  require(lambda >= 0.0 && lambda <= 1.0, "heavy_boundary_wedge: lambda must be in [0, 1]");
  return AdversarialFamily(family::HeavyBoundaryWedge{eps_angle, lambda});
}

AdversarialFamily AdversarialFamily::naturals_vc1(std::int64_t n_max) {
  require(n_max >= 4 && n_max % 2 == 0, "naturals_vc1: n_max must be even and >= 4");
  return AdversarialFamily(family::NaturalsVc1{n_max});
}

AdversarialFamily AdversarialFamily::holder_intervals(std::size_t count, double C) {
  require(count >= 3 && count % 3 == 0,
          "holder_intervals: count must be a positive multiple of 3");
  require(C > 0.0 && std::isfinite(C), "holder_intervals: C must be positive");
  // Heaviest bump: mass 3/count on width 3, slope 4 m / 9.
  require(4.0 * (3.0 / static_cast<double>(count)) / 9.0 <= C * (1.0 + 1e-12),
          "holder_intervals: C too small for bumps of width 3");
  return AdversarialFamily(family::HolderIntervals{count, C});
}

AdversarialFamily AdversarialFamily::convex_ngon(std::size_t n_gon, double eps_ball,
                                                 double completion_mass) {
  require(n_gon >= 3 && n_gon % 3 == 0, "convex_ngon: n_gon must be a positive multiple of 3");
  require(eps_ball > 0.0, "convex_ngon: eps_ball must be positive");
  require(eps_ball < 0.5, "convex_ngon: eps_ball must be below half the vertex distance");
  const double rho = ngon_radius(n_gon);
  const double sagitta =
      rho * (1.0 - std::cos(2.0 * std::numbers::pi / static_cast<double>(n_gon)));
  require(eps_ball < 0.5 * sagitta,
          "convex_ngon: eps_ball must be below half the vertex-to-chord distance");
  require(completion_mass > 0.0 && completion_mass < 1.0,
          "convex_ngon: completion_mass must be in (0, 1)");
  return AdversarialFamily(family::ConvexNGon{n_gon, eps_ball, completion_mass});
}

std::string AdversarialFamily::name() const {
  return std::visit(Overloaded{
                        [](const family::Nfl&) { return std::string("nfl"); },
                        [](const family::GeneralizedNfl&) { return std::string("generalized_nfl"); },
                        [](const family::DsaGap&) { return std::string("dsa_gap"); },
                        [](const family::HeavyBoundaryWedge&) {
                          return std::string("heavy_boundary_wedge");
                        },
                        [](const family::NaturalsVc1&) { return std::string("naturals_vc1"); },
                        [](const family::HolderIntervals&) {
                          return std::string("holder_intervals");
                        },
                        [](const family::ConvexNGon&) { return std::string("convex_ngon"); },
                    },
                    v_);
}

// ---------------------------------------------------------------------------
// NFL helpers

std::vector<Point> nfl_points(std::size_t budget) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < 3 * budget; ++i) pts.push_back(Point{static_cast<double>(i)});
  return pts;
}

Domain nfl_domain(std::size_t budget, double eps_mass, const std::vector<bool>& in_id) {
  require(in_id.size() == 3 * budget, "nfl_domain: mask must cover 3N points");
  const auto pts = nfl_points(budget);
  std::vector<Point> id, ood;
  for (std::size_t i = 0; i < pts.size(); ++i) (in_id[i] ? id : ood).push_back(pts[i]);
  return Domain::make(spread(id, eps_mass, Point{-10.0}),
                      spread(ood, eps_mass, Point{static_cast<double>(3 * budget) + 10.0}),
                      "nfl", true);
}

// ---------------------------------------------------------------------------
// Draws

Domain AdversarialFamily::draw(Rng& rng) const {
  return std::visit(
      Overloaded{
          [&](const family::Nfl& f) {
            return nfl_domain(f.budget, f.eps_mass, random_subset(3 * f.budget, 2 * f.budget, rng));
          },
          [&](const family::GeneralizedNfl& f) {
            const auto n = f.sets.size();
            return generalized_domain(f, random_subset(n, 2 * n / 3, rng));
          },
          [&](const family::DsaGap& f) {
            const double x = (1.0 - f.eps_gap) * uniform01(rng);
            double y = x + f.eps_gap * uniform01(rng);
            if (y <= x) y = x + 0.5 * f.eps_gap;
            return Domain::make(DistributionSpec::interval_with_gap(x, f.eps_gap, 3.0),
                                DistributionSpec::point_mass(Point{y}), "dsa_gap", true);
          },
          [&](const family::HeavyBoundaryWedge& f) {
            const double theta = 2.0 * std::numbers::pi * uniform01(rng);
            const double mid = theta + 0.5 * f.eps_angle;
            const Point spike = polar(0.5, mid + std::numbers::pi);
            double phi = theta + f.eps_angle * uniform01(rng);
            if (phi <= theta) phi = mid;
            return Domain::make(
                DistributionSpec::heavy_boundary_wedge_gap(theta, f.eps_angle, f.lambda, spike),
                DistributionSpec::point_mass(polar(1.0, phi)), "heavy_boundary_wedge", true);
          },
          [&](const family::NaturalsVc1& f) {
            std::uniform_int_distribution<std::int64_t> pick(1, f.n_max);
            const auto m = pick(rng);
            return Domain::make(DistributionSpec::naturals_geom(f.n_max, m),
                                DistributionSpec::point_mass(Point::discrete(m)),
                                "naturals_vc1", true);
          },
          [&](const family::HolderIntervals& f) {
            const auto mask = random_subset(f.count, 2 * f.count / 3, rng);
            std::vector<std::pair<double, double>> in, out;
            for (std::size_t i = 0; i < f.count; ++i) {
              const double lo = 10.0 * static_cast<double>(i);
              (mask[i] ? in : out).emplace_back(lo, lo + 3.0);
            }
            std::vector<double> m_in(in.size(), 1.0 / static_cast<double>(in.size()));
            std::vector<double> m_out(out.size(), 1.0 / static_cast<double>(out.size()));
            return Domain::make(DistributionSpec::holder_piecewise_1d(in, m_in, f.C),
                                DistributionSpec::holder_piecewise_1d(out, m_out, f.C),
                                "holder_intervals", true);
          },
          [&](const family::ConvexNGon& f) {
            const auto mask = random_subset(f.n_gon, 2 * f.n_gon / 3, rng);
            const double rho = ngon_radius(f.n_gon);
            std::vector<Point> a;
            std::vector<DistributionSpec> in_parts, out_parts;
            for (std::size_t k = 0; k < f.n_gon; ++k) {
              const Point v = polar(rho, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                             static_cast<double>(f.n_gon));
              auto ball = DistributionSpec::uniform_ball(v, f.eps_ball);
              if (mask[k]) {
                a.push_back(v);
                in_parts.push_back(std::move(ball));
              } else {
                out_parts.push_back(std::move(ball));
              }
            }
            const double c = f.completion_mass;
            std::vector<double> w_in(in_parts.size(),
                                     (1.0 - c) / static_cast<double>(in_parts.size()));
            in_parts.push_back(DistributionSpec::rounded_polygon(a, f.eps_ball));
            w_in.push_back(c);
            std::vector<double> w_out(out_parts.size(),
                                      1.0 / static_cast<double>(out_parts.size()));
            return Domain::make(DistributionSpec::mixture(w_in, in_parts),
                                DistributionSpec::mixture(w_out, out_parts), "convex_ngon",
                                true);
          },
      },
      v_);
}

std::optional<std::size_t> AdversarialFamily::budget() const {
  return std::visit(
      Overloaded{
          [](const family::Nfl& f) -> std::optional<std::size_t> { return f.budget; },
          [](const family::GeneralizedNfl& f) -> std::optional<std::size_t> {
            return f.sets.size() / 3;
          },
          [](const family::DsaGap&) -> std::optional<std::size_t> { return std::nullopt; },
          [](const family::HeavyBoundaryWedge&) -> std::optional<std::size_t> {
            return std::nullopt;
          },
          [](const family::NaturalsVc1& f) -> std::optional<std::size_t> {
            return static_cast<std::size_t>(f.n_max / 2 - 1);
          },
          [](const family::HolderIntervals& f) -> std::optional<std::size_t> {
            return f.count / 3;
          },
          [](const family::ConvexNGon& f) -> std::optional<std::size_t> {
            return f.n_gon / 3;
          },
      },
      v_);
}

std::optional<double> AdversarialFamily::exact_bound(double alpha) const {
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must be in [0, 1]");
  return std::visit(
      Overloaded{
          [&](const family::Nfl& f) -> std::optional<double> {
            return nfl_floor(alpha, f.eps_mass);
          },
          [&](const family::GeneralizedNfl& f) -> std::optional<double> {
            return nfl_floor(alpha, f.eps_mass);
          },
          [&](const family::DsaGap&) -> std::optional<double> { return alpha * (1.0 - alpha); },
          [&](const family::HeavyBoundaryWedge&) -> std::optional<double> {
            return std::nullopt;
          },
          [&](const family::NaturalsVc1&) -> std::optional<double> { return nfl_min(alpha); },
          [&](const family::HolderIntervals&) -> std::optional<double> {
            return nfl_min(alpha);
          },
          [&](const family::ConvexNGon& f) -> std::optional<double> {
            const double keep = std::pow(1.0 - f.completion_mass,
                                         static_cast<double>(f.n_gon / 3 + 1));
            return keep * nfl_min(alpha);
          },
      },
      v_);
}

// ---------------------------------------------------------------------------
// Exact NFL risk

double nfl_floor(double alpha, double eps_mass) {
  return nfl_min(alpha) * (1.0 - eps_mass);
}

double nfl_bayes_exact(std::size_t budget, double alpha, double eps_mass) {
  require(budget >= 1 && budget <= 8, "nfl_bayes_exact: budget must be in 1..8");
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must be in [0, 1]");
  require(eps_mass >= 0.0 && eps_mass < 1.0, "eps_mass must be in [0, 1)");
  const auto N = static_cast<int>(budget);
  const int support = 2 * N;
  // occ[k][u]: probability that k uniform draws from 2N points hit u distinct ones.
  std::vector<std::vector<double>> occ(N + 1, std::vector<double>(N + 1, 0.0));
  occ[0][0] = 1.0;
  for (int k = 1; k <= N; ++k) {
    for (int u = 1; u <= k; ++u) {
      occ[k][u] = occ[k - 1][u] * u / support +
                  occ[k - 1][u - 1] * static_cast<double>(support - u + 1) / support;
    }
  }
  const double e = eps_mass;
  double total = 0.0;
  for (int k = 0; k <= N; ++k) {
    const double binom = std::tgamma(N + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(N - k + 1.0));
    const double pk = binom * std::pow(1.0 - e, k) * std::pow(e, N - k);
    if (pk == 0.0) continue;
    for (int u = 0; u <= k; ++u) {
      // Each of the 3N - u unseen points is ID with probability (2N - u)/(3N - u).
      const double unseen =
          std::min((1.0 - alpha) * (1.0 - e) * (support - u) / support, alpha * (1.0 - e));
      total += pk * occ[k][u] * unseen;
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Game runner

GameReport run_game(const AdversarialFamily& fam, const Learner& learner,
                    const LearnerConfig& cfg, std::size_t trials, double alpha,
                    std::uint64_t seed, RiskMode mode, unsigned jobs) {
  require(trials >= 1, "run_game: trials must be >= 1");
  require(alpha >= 0.0 && alpha <= 1.0, "run_game: alpha must be in [0, 1]");
  GameReport rep;
  rep.exact_bound = fam.exact_bound(alpha);
  rep.trials.resize(trials);

  auto one = [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    TrialResult t;
    t.seed = seed + i;
    Rng rng(t.seed);
    const Domain d = fam.draw(rng);
    SampleSource src(d.id, rng, fam.budget());
    LearnerConfig c = cfg;
    c.seed = t.seed;
    c.alpha = alpha;
    const Hypothesis h = learner.fit(c, src);
    t.n_used = src.drawn();
    const auto in = risk(h, d, RiskTarget::id(), mode, rng);
    const auto out = risk(h, d, RiskTarget::ood(), mode, rng);
    t.r_in = in.value;
    t.r_out = out.value;
    t.r_alpha = (1.0 - alpha) * in.value + alpha * out.value;
    t.ci = (1.0 - alpha) * in.ci_half_width + alpha * out.ci_half_width;
    t.exact = in.exact() && out.exact();
    t.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    rep.trials[i] = t;
  };

  parallel_for(trials, jobs, one);

  double sum = 0.0, ci_sum = 0.0;
  for (const auto& t : rep.trials) {
    sum += t.r_alpha;
    ci_sum += t.ci;
    rep.all_exact = rep.all_exact && t.exact;
  }
  const auto n = static_cast<double>(trials);
  rep.mean = sum / n;
  rep.ci = hoeffding_half_width(trials) + ci_sum / n;
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const AdversarialFamily& fam) {
  nlohmann::json j;
  j["kind"] = fam.name();
  std::visit(Overloaded{
                 [&](const family::Nfl& f) {
                   j["budget"] = f.budget;
                   j["eps_mass"] = f.eps_mass;
                 },
                 [&](const family::GeneralizedNfl& f) {
                   auto sets = nlohmann::json::array();
                   for (const auto& s : f.sets) {
                     auto pts = nlohmann::json::array();
                     for (const auto& p : s) {
                       if (p.is_discrete()) {
                         pts.push_back(p.index());
                       } else {
                         pts.push_back(std::vector<double>(p.coords().begin(), p.coords().end()));
                       }
                     }
                     sets.push_back(pts);
                   }
                   j["sets"] = sets;
                   j["eps_mass"] = f.eps_mass;
                 },
                 [&](const family::DsaGap& f) { j["eps_gap"] = f.eps_gap; },
                 [&](const family::HeavyBoundaryWedge& f) {
                   j["eps_angle"] = f.eps_angle;
                   j["lambda"] = f.lambda;
                 },
                 [&](const family::NaturalsVc1& f) { j["n_max"] = f.n_max; },
                 [&](const family::HolderIntervals& f) {
                   j["count"] = f.count;
                   j["C"] = f.C;
                 },
                 [&](const family::ConvexNGon& f) {
                   j["n_gon"] = f.n_gon;
                   j["eps_ball"] = f.eps_ball;
                   j["completion_mass"] = f.completion_mass;
                 },
             },
             fam.variant());
  return j;
}

namespace {

template <class T>
T field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("family: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument(std::string("family: bad value for '") + key + "'");
  }
}

template <class T>
T field_or(const nlohmann::json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

}  // namespace

AdversarialFamily family_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("family: expected an object");
  const auto kind = field<std::string>(j, "kind");
  if (kind == "nfl") {
    return AdversarialFamily::nfl(field<std::size_t>(j, "budget"),
                                  field_or<double>(j, "eps_mass", 0.0));
  }
  if (kind == "generalized_nfl") {
    std::vector<std::vector<Point>> sets;
    const auto& js = j.at("sets");
    if (!js.is_array()) throw InvalidArgument("family: 'sets' must be an array");
    for (const auto& s : js) {
      if (!s.is_array()) throw InvalidArgument("family: each set must be an array");
      std::vector<Point> pts;
      for (const auto& p : s) {
        if (p.is_number_integer()) {
          pts.push_back(Point::discrete(p.get<std::int64_t>()));
        } else if (p.is_array()) {
          pts.push_back(Point(p.get<std::vector<double>>()));
        } else {
          throw InvalidArgument("family: set members must be indices or coordinate arrays");
        }
      }
      sets.push_back(std::move(pts));
    }
    return AdversarialFamily::generalized_nfl(std::move(sets),
                                              field_or<double>(j, "eps_mass", 0.0));
  }
  if (kind == "dsa_gap") return AdversarialFamily::dsa_gap(field<double>(j, "eps_gap"));
  if (kind == "heavy_boundary_wedge") {
    return AdversarialFamily::heavy_boundary_wedge(field<double>(j, "eps_angle"),
                                                   field<double>(j, "lambda"));
  }
  if (kind == "naturals_vc1") {
    return AdversarialFamily::naturals_vc1(field<std::int64_t>(j, "n_max"));
  }
  if (kind == "holder_intervals") {
    return AdversarialFamily::holder_intervals(field<std::size_t>(j, "count"),
                                               field_or<double>(j, "C", 1.0));
  }
  if (kind == "convex_ngon") {
    return AdversarialFamily::convex_ngon(field<std::size_t>(j, "n_gon"),
                                          field<double>(j, "eps_ball"),
                                          field_or<double>(j, "completion_mass", 0.01));
  }
  throw InvalidArgument("family: unknown kind '" + kind + "'");
}

}  // namespace oodlab
