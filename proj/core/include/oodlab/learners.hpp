#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oodlab/domain.hpp"
#include "oodlab/geometry.hpp"
#include "oodlab/hypothesis.hpp"

namespace oodlab {

/// A monotone map tau -> g(tau) with g(tau) -> 0 as tau -> 0, and its inverse.
class GFunction {
 public:
  /// g(tau) = C tau^gamma.
  static GFunction holder(double gamma, double C);
  /// Piecewise-linear through (taus[i], values[i]); taus strictly increasing,
  /// values non-decreasing. Inverse by bisection.
  static GFunction tabulated(std::vector<double> taus, std::vector<double> values);

  double operator()(double tau) const { return forward(tau); }
  double forward(double tau) const;
  /// Largest tau with forward(tau) <= y (exact for the Holder form).
  double inverse(double y) const;

  bool is_holder() const { return taus_.empty(); }
  double gamma() const { return gamma_; }
  double constant() const { return c_; }

 private:
  double gamma_ = 1.0, c_ = 1.0;
  std::vector<double> taus_, values_;
};

/// g(tau) = C tau^gamma. Throws InvalidArgument for gamma <= 0 and for C = 0
/// (the distance-based learner covers that case).
GFunction holder_to_g(double gamma, double C);

inline constexpr double kMinTau = 1e-12;
/// Plans whose sample count exceeds this throw BudgetExceeded.
inline constexpr double kMaxPlanSamples = 1e15;

struct FarPlan {
  double tau = 0.0;
  double R = 0.0;
  int n = 1;
  std::int64_t cells_per_axis = 1;
  std::int64_t M = 1;
  std::int64_t N = 1;
};

/// M = ceil(2 R sqrt(n) / tau)^n, N = ceil((M / eps) ln(M / delta)).
FarPlan far_ood_plan(double eps, double delta, double R, double tau, int n,
                     double cap = kDefaultGridCap);
/// Closed tau-balls around the samples.
Hypothesis far_ood_fit(std::span<const Point> samples, double tau);

/// tau from g^{-1}(eps / (c_n (2 sqrt(n) R)^n)), shrunk so that the grid of
/// side tau/sqrt(n) tiles the 2R box exactly; N as in far_ood_plan.
/// Throws AssumptionTooWeak if tau falls below kMinTau.
FarPlan grid_occupancy_plan(double eps, double delta, double R, int n, const GFunction& g,
                            double cap = kDefaultGridCap);
/// Union of the cubes hit by at least one sample (OutsideGrid otherwise).
Hypothesis grid_occupancy_fit(std::span<const Point> samples, const AxisGrid& grid);
/// The plan's grid centred on `center`.
AxisGrid plan_grid(const FarPlan& plan, const Point& center);

struct DensityGridPlan {
  double tau = 0.0;
  double R = 0.0;
  int n = 1;
  AxisGrid grid;  // centred on the origin; recentre before fitting
  double A = 0.0;  // eps / M
  double B = 0.0;  // c_n g(tau) tau^n
  std::int64_t M = 1;
  std::int64_t N = 1;
  std::int64_t count_threshold = 1;
};

/// tau from g^{-1}(eps / (4 c_n (2 sqrt(n) R)^n)), then shrunk to the next
/// exact tiling strictly below it; B = c_n g(tau) tau^n,
/// N = ceil((3 / B) ln(M / delta)), threshold ceil(2 B N).
/// Throws AssumptionTooWeak unless A > 4B.
DensityGridPlan density_grid_plan(double eps, double delta, double R, int n,
                                  const GFunction& g, double cap = kDefaultGridCap);
/// Cubes holding at least plan.count_threshold samples, on `grid`.
/// Throws InvalidArgument unless samples.size() == plan.N.
Hypothesis density_grid_fit(std::span<const Point> samples, const DensityGridPlan& plan,
                            const AxisGrid& grid);
Hypothesis density_grid_fit(std::span<const Point> samples, const DensityGridPlan& plan);
/// Threshold rule on an explicit grid, without the sample-count check.
Hypothesis count_threshold_fit(std::span<const Point> samples, const AxisGrid& grid,
                               std::int64_t threshold);

struct ConvexSchedule {
  double lambda = 0.0;
  double C_delta = 0.0;
  int d = 1;
  std::int64_t M = 0;
};

/// C_delta = 1 + ln(1/delta), x = C_delta d / lambda,
/// M = max(ceil(x ln^2 x) + 1, d + 1). Throws BudgetExceeded above `cap`.
ConvexSchedule convex_schedule(double lambda, double delta, int d, double cap = 1e9);
Hypothesis convex_hull_fit(std::span<const Point> samples);

enum class BaseLearner { kFarOod, kGridOccupancy, kDensityGrid };

struct NonuniformParams {
  BaseLearner base = BaseLearner::kFarOod;
  double tau = 0.0;               // far-OOD radius
  std::optional<GFunction> g;     // grid learners
  double cap = kDefaultGridCap;
};

struct NonuniformResult {
  Hypothesis h;
  std::int64_t n_radius = 0;  // N_1
  Point center;
  double radius = 0.0;
  std::int64_t n_base = 0;  // samples drawn for the base learner
  std::int64_t n_kept = 0;  // of those, inside the estimated ball
};

/// ceil((2/eps) ln(2/delta)).
std::int64_t nonuniform_radius_samples(double eps, double delta);

/// Estimates a radius from N_1 samples around the first one, then runs the
/// base learner at (eps/2, delta/2, R) on fresh samples inside that ball.
NonuniformResult nonuniform_fit(const NonuniformParams& params, double eps, double delta,
                                SampleSource& source);

// Ready-made learners. Plan-driven learners take eps and delta from the
// config at fit time; grid learners assume the support lies in B(center, R)
// (center defaults to the origin).
Learner far_ood_learner(double R, double tau);
Learner grid_occupancy_learner(double R, GFunction g, std::optional<Point> center = {});
Learner density_grid_learner(double R, GFunction g, std::optional<Point> center = {});
Learner convex_hull_learner(double lambda, int d);
Learner nonuniform_learner(NonuniformParams params);
Learner always_all_learner();
Learner always_empty_learner();
/// Learners that consume up to k samples (or the source's remaining budget).
Learner memorize_learner(std::size_t k);
Learner fixed_far_ood_learner(double tau, std::size_t k);
Learner fixed_convex_hull_learner(std::size_t k);

}  // namespace oodlab
