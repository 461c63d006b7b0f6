#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "oodlab/domain.hpp"
#include "oodlab/risk.hpp"

namespace oodlab {

namespace family {

/// 3N points on a line; ID on a uniformly chosen 2N of them, OOD on the rest.
struct Nfl {
  std::size_t budget = 1;  // N
  double eps_mass = 0.0;
};
/// Disjoint finite point sets playing the role of the NFL points.
struct GeneralizedNfl {
  std::vector<std::vector<Point>> sets;
  double eps_mass = 0.0;
};
/// ID = IntervalWithGap(x, gap, 3) with x ~ U[0, 1 - gap]; OOD a point in the gap.
struct DsaGap {
  double eps_gap = 0.1;
};
/// Circle law cut by a chord at a uniform angle; OOD a point on the removed arc.
struct HeavyBoundaryWedge {
  double eps_angle = 0.1;
  double lambda = 0.1;
};
/// ID = NaturalsGeom(n_max, m), OOD = {m}, m uniform in 1..n_max.
struct NaturalsVc1 {
  std::int64_t n_max = 4;
};
/// Triangle bumps on [10i, 10i + 3]; ID on 2/3 of them, OOD on the rest.
struct HolderIntervals {
  std::size_t count = 3;
  double C = 1.0;
};
/// eps-balls at the vertices of a regular n-gon with unit side.
struct ConvexNGon {
  std::size_t n_gon = 6;
  double eps_ball = 0.1;
  double completion_mass = 0.01;
};

}  // namespace family

/// A finite or continuous index set of domains drawn uniformly at random.
class AdversarialFamily {
 public:
  using Variant = std::variant<family::Nfl, family::GeneralizedNfl, family::DsaGap,
                               family::HeavyBoundaryWedge, family::NaturalsVc1,
                               family::HolderIntervals, family::ConvexNGon>;

  /// Each factory validates its parameters and throws InvalidArgument.
  static AdversarialFamily nfl(std::size_t budget, double eps_mass = 0.0);
  static AdversarialFamily generalized_nfl(std::vector<std::vector<Point>> sets,
                                           double eps_mass = 0.0);
  static AdversarialFamily dsa_gap(double eps_gap);
  static AdversarialFamily heavy_boundary_wedge(double eps_angle, double lambda);
  static AdversarialFamily naturals_vc1(std::int64_t n_max);
  static AdversarialFamily holder_intervals(std::size_t count, double C);
  static AdversarialFamily convex_ngon(std::size_t n_gon, double eps_ball,
                                       double completion_mass = 0.01);

  const Variant& variant() const { return v_; }
  std::string name() const;

  Domain draw(Rng& rng) const;
  /// Largest ID sample count the lower bound is stated for; nullopt when the
  /// bound holds for any count.
  std::optional<std::size_t> budget() const;
  /// Expected-risk floor for learners within budget; nullopt if none is known.
  std::optional<double> exact_bound(double alpha) const;

 private:
  explicit AdversarialFamily(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// NFL points 0..3N-1 on the real line.
std::vector<Point> nfl_points(std::size_t budget);
/// The NFL domain with ID support `in_id` (indices into nfl_points), OOD on
/// the rest; any split is allowed, masses are spread evenly on each side.
Domain nfl_domain(std::size_t budget, double eps_mass, const std::vector<bool>& in_id);

/// min{(1 - alpha) / 2, alpha} (1 - eps).
double nfl_floor(double alpha, double eps_mass);
/// Expected mixed risk of the posterior-optimal hypothesis on the NFL family,
/// exact. Throws InvalidArgument for budget > 8.
double nfl_bayes_exact(std::size_t budget, double alpha, double eps_mass);

struct TrialResult {
  std::uint64_t seed = 0;
  std::size_t n_used = 0;
  double r_in = 0.0, r_out = 0.0, r_alpha = 0.0;
  double ci = 0.0;  // Monte Carlo half-width of r_alpha; 0 when exact
  bool exact = true;
  double wall_ms = 0.0;
};

struct GameReport {
  double mean = 0.0;
  /// Hoeffding half-width over trials at confidence 0.999 plus the mean
  /// Monte Carlo half-width.
  double ci = 0.0;
  std::optional<double> exact_bound;
  std::vector<TrialResult> trials;
  bool all_exact = true;
};

/// Trial i draws a domain and runs the learner with an Rng seeded seed + i.
/// The learner only sees ID samples, capped at the family budget
/// (BudgetExceeded past it). Trials run on `jobs` threads; results do not
/// depend on `jobs`.
GameReport run_game(const AdversarialFamily& fam, const Learner& learner,
                    const LearnerConfig& cfg, std::size_t trials, double alpha,
                    std::uint64_t seed, RiskMode mode = RiskMode::exact_if_possible(),
                    unsigned jobs = 1);

/// {"kind": "nfl", "budget": N, "eps_mass": e} and so on.
nlohmann::json to_json(const AdversarialFamily& fam);
AdversarialFamily family_from_json(const nlohmann::json& j);

}  // namespace oodlab
