#include "oodlab/learners.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "oodlab/errors.hpp"

namespace oodlab {

namespace {

void require_eps_delta(double eps, double delta) {
  if (!(eps > 0.0 && eps < 0.5)) throw InvalidArgument("epsilon must be in (0, 1/2)");
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidArgument("delta must be in (0, 1/2)");
}

std::int64_t checked_count(double x, const char* what) {
  if (!(x <= kMaxPlanSamples)) {
    throw BudgetExceeded(std::string(what) + " needs " + std::to_string(x) + " samples");
  }
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(x)));
}

std::int64_t robust_floor(double x) {
  return static_cast<std::int64_t>(std::floor(x + 1e-9 * std::max(1.0, std::fabs(x))));
}

double ipow(double b, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= b;
  return r;
}

std::int64_t cube_count(std::int64_t cells, int n, double cap) {
  const double m = ipow(static_cast<double>(cells), n);
  if (m > cap) throw GridTooFine(m, cap);
  return static_cast<std::int64_t>(m);
}

std::int64_t union_bound_samples(std::int64_t M, double eps, double delta) {
  const double m = static_cast<double>(M);
  return checked_count(m / eps * std::log(m / delta), "plan");
}

void require_continuous(const SampleSource& src, const char* who) {
  if (src.space() != SpaceKind::kContinuous) {
    throw InvalidArgument(std::string(who) + " needs a Euclidean instance space");
  }
}

std::size_t budgeted(const SampleSource& src, std::size_t k) {
  if (auto r = src.remaining()) return std::min(k, *r);
  return k;
}

}  // namespace

// ---------------------------------------------------------------------------
// GFunction

GFunction GFunction::holder(double gamma, double C) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be > 0");
  if (!(C >= 0.0) || !std::isfinite(C)) throw InvalidArgument("C must be >= 0");
  GFunction g;
  g.gamma_ = gamma;
  g.c_ = C;
  return g;
}

GFunction GFunction::tabulated(std::vector<double> taus, std::vector<double> values) {
  if (taus.size() != values.size() || taus.empty()) {
    throw InvalidArgument("tabulated g: need matching non-empty tau and value lists");
  }
  if (taus.front() < 0.0) throw InvalidArgument("tabulated g: tau must be >= 0");
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(values[i] >= 0.0)) throw InvalidArgument("tabulated g: values must be >= 0");
    if (i > 0 && !(taus[i] > taus[i - 1])) {
      throw InvalidArgument("tabulated g: taus must be strictly increasing");
    }
    if (i > 0 && values[i] < values[i - 1]) {
      throw InvalidArgument("tabulated g: values must be non-decreasing");
    }
  }
  if (taus.front() > 0.0) {
    taus.insert(taus.begin(), 0.0);
    values.insert(values.begin(), 0.0);
  } else if (values.front() != 0.0) {
    throw InvalidArgument("tabulated g: g(0) must be 0");
  }
  GFunction g;
  g.taus_ = std::move(taus);
  g.values_ = std::move(values);
  return g;
}

double GFunction::forward(double tau) const {
  if (tau <= 0.0) return 0.0;
  if (is_holder()) return c_ * std::pow(tau, gamma_);
  if (tau >= taus_.back()) return values_.back();
  const auto it = std::upper_bound(taus_.begin(), taus_.end(), tau);
  const auto i = static_cast<std::size_t>(it - taus_.begin());
  const double t = (tau - taus_[i - 1]) / (taus_[i] - taus_[i - 1]);
  return values_[i - 1] + t * (values_[i] - values_[i - 1]);
}

double GFunction::inverse(double y) const {
  if (!(y >= 0.0)) throw InvalidArgument("g inverse needs y >= 0");
  if (is_holder()) {
    if (c_ == 0.0) throw InvalidArgument("g is identically zero; inverse undefined");
    return std::pow(y / c_, 1.0 / gamma_);
  }
  if (y >= values_.back()) return taus_.back();
  double lo = 0.0, hi = taus_.back();
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (forward(mid) <= y ? lo : hi) = mid;
  }
  return lo;
}

GFunction holder_to_g(double gamma, double C) {
  if (C == 0.0) {
    throw InvalidArgument(
        "holder_to_g: C = 0 makes g identically zero; use the far-OOD learner "
        "(ball union around the samples) instead");
  }
  return GFunction::holder(gamma, C);
}

// ---------------------------------------------------------------------------
// Distance and grid plans

FarPlan far_ood_plan(double eps, double delta, double R, double tau, int n, double cap) {
  require_eps_delta(eps, delta);
  const AxisGrid grid = grid_cover(Point::zeros(static_cast<std::size_t>(std::max(n, 1))),
                                   R, tau, n, cap);
  FarPlan p;
  p.tau = tau;
  p.R = R;
  p.n = n;
  p.cells_per_axis = grid.cells_per_axis();
  p.M = grid.cube_count();
  p.N = union_bound_samples(p.M, eps, delta);
  return p;
}

Hypothesis far_ood_fit(std::span<const Point> samples, double tau) {
  return Hypothesis::ball_union({samples.begin(), samples.end()}, tau, true);
}

FarPlan grid_occupancy_plan(double eps, double delta, double R, int n, const GFunction& g,
                            double cap) {
  require_eps_delta(eps, delta);
  if (!(R > 0.0)) throw InvalidArgument("R must be positive");
  if (n < 1) throw InvalidArgument("n must be >= 1");
  const double root_n = std::sqrt(static_cast<double>(n));
  const double extent = 2.0 * root_n * R;
  const double tau0 = g.inverse(eps / (unit_ball_volume(n) * ipow(extent, n)));
  if (!(tau0 >= kMinTau)) {
    throw AssumptionTooWeak("g^{-1} gives tau = " + std::to_string(tau0) +
                            " below 1e-12; assumption too weak at this epsilon");
  }
  const double per_axis = extent / tau0;
  if (per_axis > cap) throw GridTooFine(std::pow(per_axis, n), cap);
  FarPlan p;
  p.R = R;
  p.n = n;
  p.cells_per_axis = std::max<std::int64_t>(1, robust_ceil(per_axis));
  p.tau = extent / static_cast<double>(p.cells_per_axis);
  p.M = cube_count(p.cells_per_axis, n, cap);
  p.N = union_bound_samples(p.M, eps, delta);
  return p;
}

AxisGrid plan_grid(const FarPlan& plan, const Point& center) {
  if (center.is_discrete() || center.dim() != static_cast<std::size_t>(plan.n)) {
    throw DimensionMismatch("plan_grid: center dimension differs from the plan");
  }
  const double side = plan.tau / std::sqrt(static_cast<double>(plan.n));
  return AxisGrid(Point::zeros(center.dim()), side, plan.cells_per_axis)
      .recentered(center);
}

Hypothesis count_threshold_fit(std::span<const Point> samples, const AxisGrid& grid,
                               std::int64_t threshold) {
  if (threshold < 1) throw InvalidArgument("count threshold must be >= 1");
  std::unordered_map<std::int64_t, std::int64_t> counts;
  for (const auto& s : samples) ++counts[grid.linear_cube_of(s)];
  std::vector<std::int64_t> cells;
  for (const auto& [cell, c] : counts) {
    if (c >= threshold) cells.push_back(cell);
  }
  if (cells.empty()) return Hypothesis::empty();
  return Hypothesis::cube_union(grid, std::move(cells));
}

Hypothesis grid_occupancy_fit(std::span<const Point> samples, const AxisGrid& grid) {
  return count_threshold_fit(samples, grid, 1);
}

DensityGridPlan density_grid_plan(double eps, double delta, double R, int n,
                                  const GFunction& g, double cap) {
  require_eps_delta(eps, delta);
  if (!(R > 0.0)) throw InvalidArgument("R must be positive");
  if (n < 1) throw InvalidArgument("n must be >= 1");
  const double cn = unit_ball_volume(n);
  const double root_n = std::sqrt(static_cast<double>(n));
  const double extent = 2.0 * root_n * R;
  const double tau0 = g.inverse(eps / (4.0 * cn * ipow(extent, n)));
  if (!(tau0 >= kMinTau)) {
    throw AssumptionTooWeak("g^{-1} gives tau = " + std::to_string(tau0) +
                            " below 1e-12; assumption too weak at this epsilon");
  }
  const double per_axis = extent / tau0;
  if (per_axis > cap) throw GridTooFine(std::pow(per_axis, n), cap);
  // At an exact tiling A = 4B, so the cube side must drop strictly below tau0.
  const std::int64_t cells = robust_floor(per_axis) + 1;
  DensityGridPlan p;
  p.R = R;
  p.n = n;
  p.tau = extent / static_cast<double>(cells);
  p.grid = AxisGrid(Point::zeros(static_cast<std::size_t>(n)), p.tau / root_n, cells)
               .recentered(Point::zeros(static_cast<std::size_t>(n)));
  p.M = cube_count(cells, n, cap);
  p.A = eps / static_cast<double>(p.M);
  p.B = cn * g(p.tau) * ipow(p.tau, n);
  if (!(p.A > 4.0 * p.B)) {
    throw AssumptionTooWeak("density plan: separation A > 4B fails (A = " +
                            std::to_string(p.A) + ", B = " + std::to_string(p.B) + ")");
  }
  if (!(p.B > 0.0)) throw AssumptionTooWeak("density plan: B = 0, use the far-OOD learner");
  p.N = checked_count(3.0 / p.B * std::log(static_cast<double>(p.M) / delta),
                      "density plan");
  p.count_threshold = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(2.0 * p.B * static_cast<double>(p.N))));
  return p;
}

Hypothesis density_grid_fit(std::span<const Point> samples, const DensityGridPlan& plan,
                            const AxisGrid& grid) {
  if (static_cast<std::int64_t>(samples.size()) != plan.N) {
    throw InvalidArgument("density_grid_fit: got " + std::to_string(samples.size()) +
                          " samples, plan needs " + std::to_string(plan.N));
  }
  return count_threshold_fit(samples, grid, plan.count_threshold);
}

Hypothesis density_grid_fit(std::span<const Point> samples, const DensityGridPlan& plan) {
  return density_grid_fit(samples, plan, plan.grid);
}

// ---------------------------------------------------------------------------
// Convex hull

ConvexSchedule convex_schedule(double lambda, double delta, int d, double cap) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InvalidArgument("lambda must be in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must be in (0, 1)");
  if (d < 1) throw InvalidArgument("d must be >= 1");
  ConvexSchedule s;
  s.lambda = lambda;
  s.d = d;
  s.C_delta = 1.0 + std::log(1.0 / delta);
  const double x = s.C_delta * d / lambda;
  const double l = std::log(x);
  const double m = std::ceil(x * l * l) + 1.0;
  if (!(m <= cap)) {
    throw BudgetExceeded("convex schedule needs " + std::to_string(m) +
                         " samples, above the cap " + std::to_string(cap));
  }
  s.M = std::max<std::int64_t>(static_cast<std::int64_t>(m), d + 1);
  return s;
}

Hypothesis convex_hull_fit(std::span<const Point> samples) {
  return Hypothesis::convex_hull(samples);
}

// ---------------------------------------------------------------------------
// Unbounded supports

std::int64_t nonuniform_radius_samples(double eps, double delta) {
  require_eps_delta(eps, delta);
  return checked_count(2.0 / eps * std::log(2.0 / delta), "radius estimate");
}

NonuniformResult nonuniform_fit(const NonuniformParams& params, double eps, double delta,
                                SampleSource& source) {
  require_continuous(source, "nonuniform_fit");
  NonuniformResult r;
  r.n_radius = nonuniform_radius_samples(eps, delta);
  const auto first = source.draw(static_cast<std::size_t>(r.n_radius));
  r.center = first.front();
  for (const auto& p : first) r.radius = std::max(r.radius, distance(r.center, p));
  const double R = std::max(r.radius, 1e-9);
  const int n = static_cast<int>(source.dim());
  const double e = eps / 2.0, dl = delta / 2.0;

  std::int64_t N = 0;
  AxisGrid grid;
  std::int64_t threshold = 1;
  switch (params.base) {
    case BaseLearner::kFarOod:
      N = far_ood_plan(e, dl, R, params.tau, n, params.cap).N;
      break;
    case BaseLearner::kGridOccupancy: {
      if (!params.g) throw InvalidArgument("grid base learner needs a g function");
      const FarPlan p = grid_occupancy_plan(e, dl, R, n, *params.g, params.cap);
      N = p.N;
      grid = plan_grid(p, r.center);
      break;
    }
    case BaseLearner::kDensityGrid: {
      if (!params.g) throw InvalidArgument("grid base learner needs a g function");
      const DensityGridPlan p = density_grid_plan(e, dl, R, n, *params.g, params.cap);
      N = p.N;
      grid = p.grid.recentered(r.center);
      threshold = p.count_threshold;
      break;
    }
  }
  r.n_base = N;
  std::vector<Point> kept;
  for (std::int64_t i = 0; i < N; ++i) {
    Point p = source.draw();
    if (distance(r.center, p) <= r.radius) kept.push_back(std::move(p));
  }
  r.n_kept = static_cast<std::int64_t>(kept.size());
  switch (params.base) {
    case BaseLearner::kFarOod:
      r.h = far_ood_fit(kept, params.tau);
      break;
    case BaseLearner::kGridOccupancy:
    case BaseLearner::kDensityGrid:
      r.h = count_threshold_fit(kept, grid, threshold);
      break;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Learner objects

Learner far_ood_learner(double R, double tau) {
  return {"far_ood", [R, tau](const LearnerConfig& c, SampleSource& src) {
            require_continuous(src, "far_ood");
            const auto plan =
                far_ood_plan(c.epsilon, c.delta, R, tau, static_cast<int>(src.dim()));
            const auto s = src.draw(static_cast<std::size_t>(plan.N));
            return far_ood_fit(s, tau);
          }};
}

Learner grid_occupancy_learner(double R, GFunction g, std::optional<Point> center) {
  return {"grid_occupancy",
          [R, g = std::move(g), center](const LearnerConfig& c, SampleSource& src) {
            require_continuous(src, "grid_occupancy");
            const int n = static_cast<int>(src.dim());
            const auto plan = grid_occupancy_plan(c.epsilon, c.delta, R, n, g);
            const auto grid = plan_grid(plan, center.value_or(Point::zeros(src.dim())));
            const auto s = src.draw(static_cast<std::size_t>(plan.N));
            return grid_occupancy_fit(s, grid);
          }};
}

Learner density_grid_learner(double R, GFunction g, std::optional<Point> center) {
  return {"density_grid",
          [R, g = std::move(g), center](const LearnerConfig& c, SampleSource& src) {
            require_continuous(src, "density_grid");
            const int n = static_cast<int>(src.dim());
            const auto plan = density_grid_plan(c.epsilon, c.delta, R, n, g);
            const auto grid =
                plan.grid.recentered(center.value_or(Point::zeros(src.dim())));
            const auto s = src.draw(static_cast<std::size_t>(plan.N));
            return density_grid_fit(s, plan, grid);
          }};
}

Learner convex_hull_learner(double lambda, int d) {
  return {"convex_hull", [lambda, d](const LearnerConfig& c, SampleSource& src) {
            const auto sched = convex_schedule(lambda, c.delta, d);
            const auto s = src.draw(static_cast<std::size_t>(sched.M));
            return convex_hull_fit(s);
          }};
}

Learner nonuniform_learner(NonuniformParams params) {
  return {"nonuniform", [params = std::move(params)](const LearnerConfig& c,
                                                     SampleSource& src) {
            return nonuniform_fit(params, c.epsilon, c.delta, src).h;
          }};
}

Learner always_all_learner() {
  return {"always_all", [](const LearnerConfig&, SampleSource&) { return Hypothesis::all(); }};
}

Learner always_empty_learner() {
  return {"always_empty",
          [](const LearnerConfig&, SampleSource&) { return Hypothesis::empty(); }};
}

Learner memorize_learner(std::size_t k) {
  return {"memorize", [k](const LearnerConfig&, SampleSource& src) {
            return Hypothesis::finite_set(src.draw(budgeted(src, k)));
          }};
}

Learner fixed_far_ood_learner(double tau, std::size_t k) {
  return {"far_ood_fixed", [tau, k](const LearnerConfig&, SampleSource& src) {
            const auto s = src.draw(budgeted(src, k));
            return far_ood_fit(s, tau);
          }};
}

Learner fixed_convex_hull_learner(std::size_t k) {
  return {"convex_hull_fixed", [k](const LearnerConfig&, SampleSource& src) {
            const auto s = src.draw(budgeted(src, k));
            if (s.empty()) return Hypothesis::empty();
            return convex_hull_fit(s);
          }};
}

}  // namespace oodlab
