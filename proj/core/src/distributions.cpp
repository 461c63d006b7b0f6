#include "oodlab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>

#include "oodlab/errors.hpp"

namespace oodlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSumTol = 1e-9;
constexpr double kSlack = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

void require_continuous(const Point& p, const std::string& what) {
  require(!p.is_discrete() && p.dim() >= 1, what + " must be a point of R^n");
}

void require_probabilities(const std::vector<double>& w, const std::string& what) {
  double s = 0.0;
  for (double x : w) {
    require(std::isfinite(x) && x >= 0.0, what + " must be non-negative");
    s += x;
  }
  require(std::abs(s - 1.0) <= kSumTol, what + " must sum to 1");
}

std::size_t pick_index(const std::vector<double>& weights, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  // Rounding left u above the total; take the last non-zero entry.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return 0;
}

std::vector<double> random_direction(std::size_t n, Rng& rng) {
  std::normal_distribution<double> gauss;
  std::vector<double> u(n);
  double s = 0.0;
  do {
    s = 0.0;
    for (auto& c : u) {
      c = gauss(rng);
      s += c * c;
    }
  } while (s == 0.0);
  s = std::sqrt(s);
  for (auto& c : u) c /= s;
  return u;
}

Point shell_point(const Point& center, double r, Rng& rng) {
  auto u = random_direction(center.dim(), rng);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = center[i] + r * u[i];
  return Point(u);
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// Unit-circle wedge geometry: the cut piece lies beyond the chord, i.e.
// where dot(x, mid) > cos(eps/2) with `mid` the bisecting direction.
struct Chord {
  double ux, uy, offset;
  bool inside(double x, double y) const {
    return ux * x + uy * y <= offset + kSlack;
  }
};

Chord chord_of(const dist::HeavyBoundaryWedgeGap& w) {
  const double mid = w.theta + 0.5 * w.eps_angle;
  return {std::cos(mid), std::sin(mid), std::cos(0.5 * w.eps_angle)};
}

bool in_unit_disk(const Point& p) { return norm(p) <= 1.0 + kSlack; }

bool on_unit_circle(const Point& p) { return std::abs(norm(p) - 1.0) <= kSlack; }

Point sample_circle_law(double lambda, Rng& rng) {
  if (uniform01(rng) < lambda) {
    const double r = std::sqrt(uniform01(rng));
    const double a = 2.0 * kPi * uniform01(rng);
    return Point{r * std::cos(a), r * std::sin(a)};
  }
  const double a = 2.0 * kPi * uniform01(rng);
  return Point{std::cos(a), std::sin(a)};
}

// Triangle law on [lo, hi], symmetric about the midpoint.
double triangle_density(double lo, double hi, double mass, double x) {
  if (x <= lo || x >= hi) return 0.0;
  const double w = hi - lo;
  const double mid = 0.5 * (lo + hi);
  return (2.0 * mass / w) * (1.0 - std::abs(x - mid) / (0.5 * w));
}

double triangle_cdf(double lo, double hi, double x) {
  if (x <= lo) return 0.0;
  if (x >= hi) return 1.0;
  const double w = hi - lo;
  const double mid = 0.5 * (lo + hi);
  if (x <= mid) {
    const double t = (x - lo) / w;
    return 2.0 * t * t;
  }
  const double t = (hi - x) / w;
  return 1.0 - 2.0 * t * t;
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// ---------------------------------------------------------------------------
// 1-D continuous CDFs and atoms

struct Law1d {
  // CDF of the continuous part (total mass <= 1); atoms separately.
  std::function<double(double)> cdf;
  std::vector<std::pair<double, double>> atoms;  // (location, mass)
};

std::optional<Law1d> law_1d(const DistributionSpec& spec);

std::optional<Law1d> law_1d(const DistributionSpec& spec) {
  if (spec.dim() != 1 || spec.space() != SpaceKind::kContinuous) return std::nullopt;
  return std::visit(
      Overloaded{
          [](const dist::UniformBox& b) -> std::optional<Law1d> {
            const double lo = b.lo[0], hi = b.hi[0];
            return Law1d{[=](double x) { return clamp01((x - lo) / (hi - lo)); }, {}};
          },
          [](const dist::UniformBall& b) -> std::optional<Law1d> {
            const double lo = b.center[0] - b.radius, hi = b.center[0] + b.radius;
            return Law1d{[=](double x) { return clamp01((x - lo) / (hi - lo)); }, {}};
          },
          [](const dist::UniformAnnulus& a) -> std::optional<Law1d> {
            const double c = a.center[0], ri = a.r_inner, ro = a.r_outer;
            return Law1d{[=](double x) {
                           const double w = ro - ri;
                           const double left = std::clamp(x - (c - ro), 0.0, w);
                           const double right = std::clamp(x - (c + ri), 0.0, w);
                           return (left + right) / (2.0 * w);
                         },
                         {}};
          },
          [](const dist::HalfGaussian& g) -> std::optional<Law1d> {
            const double mu = g.mean[0], s = g.sigma;
            return Law1d{[=](double x) {
                           if (x >= mu) return 1.0;
                           return 2.0 * std_normal_cdf((x - mu) / s);
                         },
                         {}};
          },
          [](const dist::PointMass& p) -> std::optional<Law1d> {
            return Law1d{[](double) { return 0.0; }, {{p.point[0], 1.0}}};
          },
          [](const dist::FiniteSupport& f) -> std::optional<Law1d> {
            Law1d law{[](double) { return 0.0; }, {}};
            for (std::size_t i = 0; i < f.points.size(); ++i) {
              law.atoms.emplace_back(f.points[i][0], f.probs[i]);
            }
            return law;
          },
          [](const dist::IntervalWithGap& g) -> std::optional<Law1d> {
            const double a = g.x, b = g.x + g.gap;
            return Law1d{[=](double x) {
                           const double t = std::clamp(x, 0.0, 1.0);
                           return std::min(t, a) + std::max(0.0, t - b);
                         },
                         {{g.spike, g.gap}}};
          },
          [](const dist::HolderPiecewise1D& h) -> std::optional<Law1d> {
            return Law1d{[h](double x) {
                           double s = 0.0;
                           for (std::size_t i = 0; i < h.intervals.size(); ++i) {
                             s += h.masses[i] * triangle_cdf(h.intervals[i].first,
                                                             h.intervals[i].second, x);
                           }
                           return s;
                         },
                         {}};
          },
          [](const auto&) -> std::optional<Law1d> { return std::nullopt; },
      },
      spec.variant());
}

double law_mass(const Law1d& law, const IntervalList& ivs) {
  double m = 0.0;
  for (const auto& iv : ivs) {
    const double hi = std::isinf(iv.hi) ? law.cdf(kInf) : law.cdf(iv.hi);
    const double lo = std::isinf(iv.lo) ? 0.0 : law.cdf(iv.lo);
    m += hi - lo;
    for (const auto& [x, w] : law.atoms) {
      if (iv.contains(x)) m += w;
    }
  }
  return clamp01(m);
}

// ---------------------------------------------------------------------------
// Planar polygon helpers

using Polygon = std::vector<std::pair<double, double>>;

Polygon to_polygon(std::span<const Point> pts) {
  Polygon poly;
  for (const auto& p : pts) poly.emplace_back(p[0], p[1]);
  return poly;
}

// Keeps the part with a*x + b*y <= c.
Polygon clip_halfplane(const Polygon& poly, double a, double b, double c) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    const double fp = a * p.first + b * p.second - c;
    const double fq = a * q.first + b * q.second - c;
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
      const double t = fp / (fp - fq);
      out.emplace_back(p.first + t * (q.first - p.first),
                       p.second + t * (q.second - p.second));
    }
  }
  return out;
}

double area_of(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % n];
    twice += a.first * b.second - a.second * b.first;
  }
  return 0.5 * std::abs(twice);
}

Polygon clip_box(Polygon poly, const std::vector<double>& lo,
                 const std::vector<double>& hi) {
  poly = clip_halfplane(poly, -1.0, 0.0, -lo[0]);
  poly = clip_halfplane(poly, 1.0, 0.0, hi[0]);
  poly = clip_halfplane(poly, 0.0, -1.0, -lo[1]);
  poly = clip_halfplane(poly, 0.0, 1.0, hi[1]);
  return poly;
}

// Signed area of triangle (0, a, b) intersected with the disk of radius r
// around the origin.
double triangle_disk_area(double ax, double ay, double bx, double by, double r) {
  auto cross = [](double ux, double uy, double vx, double vy) { return ux * vy - uy * vx; };
  auto sector = [&](double ux, double uy, double vx, double vy) {
    return 0.5 * r * r * std::atan2(cross(ux, uy, vx, vy), ux * vx + uy * vy);
  };
  const double r2 = r * r;
  const double da = ax * ax + ay * ay;
  const double db = bx * bx + by * by;
  if (da <= r2 && db <= r2) return 0.5 * cross(ax, ay, bx, by);
  const double dx = bx - ax, dy = by - ay;
  const double A = dx * dx + dy * dy;
  if (A == 0.0) return 0.0;
  const double B = ax * dx + ay * dy;
  const double C = da - r2;
  const double disc = B * B - A * C;
  if (disc <= 0.0) return sector(ax, ay, bx, by);
  const double s = std::sqrt(disc);
  const double t1 = (-B - s) / A;
  const double t2 = (-B + s) / A;
  if (t2 <= 0.0 || t1 >= 1.0) return sector(ax, ay, bx, by);
  const double s1 = std::max(t1, 0.0), s2 = std::min(t2, 1.0);
  const double p1x = ax + s1 * dx, p1y = ay + s1 * dy;
  const double p2x = ax + s2 * dx, p2y = ay + s2 * dy;
  double res = 0.5 * cross(p1x, p1y, p2x, p2y);
  if (t1 > 0.0) res += sector(ax, ay, p1x, p1y);
  if (t2 < 1.0) res += sector(p2x, p2y, bx, by);
  return res;
}

double disk_area_of(const Polygon& poly, double cx, double cy, double r) {
  const std::size_t n = poly.size();
  if (n < 3) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % n];
    s += triangle_disk_area(a.first - cx, a.second - cy, b.first - cx, b.second - cy, r);
  }
  return std::abs(s);
}

std::optional<Polygon> planar_hull_polygon(const Hypothesis& h) {
  if (h.kind() != Hypothesis::Kind::kConvexHull || h.dim() != 2) return std::nullopt;
  return to_polygon(convex_hull_2d(h.convex_hull().index.vertices()));
}

double box_overlap_fraction(const std::vector<double>& lo, const std::vector<double>& hi,
                            const std::vector<double>& qlo,
                            const std::vector<double>& qhi) {
  double f = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const double a = std::max(lo[i], qlo[i]);
    const double b = std::min(hi[i], qhi[i]);
    if (b <= a) return 0.0;
    f *= (b - a) / (hi[i] - lo[i]);
  }
  return f;
}

// Mass of a region under the planar circle law (no atoms).
std::optional<double> circle_law_mass(double lambda, const Hypothesis& h,
                                      const std::optional<Chord>& chord) {
  if (h.kind() == Hypothesis::Kind::kBallUnion && !chord) {
    const auto& b = h.ball_union();
    if (b.centers.size() == 1 && norm(b.centers[0]) == 0.0) {
      const double r = b.radius;
      if (r < 1.0) return lambda * r * r;
      if (r == 1.0 && !b.closed) return lambda;
      return 1.0;
    }
    return std::nullopt;
  }
  auto poly = planar_hull_polygon(h);
  if (!poly) return std::nullopt;
  // Arc mass inside the hull is zero only when every vertex is in the disk.
  for (const auto& [x, y] : *poly) {
    if (x * x + y * y > 1.0 + kSlack) return std::nullopt;
  }
  Polygon p = *poly;
  if (chord) p = clip_halfplane(p, chord->ux, chord->uy, chord->offset);
  if (p.size() < 3) return 0.0;
  return lambda * disk_area_of(p, 0.0, 0.0, 1.0) / kPi;
}

std::optional<double> continuous_mass(const DistributionSpec& spec, const Hypothesis& h);

std::optional<double> continuous_mass(const DistributionSpec& spec, const Hypothesis& h) {
  using Kind = Hypothesis::Kind;
  if (spec.dim() == 1) {
    auto law = law_1d(spec);
    auto ivs = h.as_intervals();
    if (law && ivs) return law_mass(*law, *ivs);
    return std::nullopt;
  }
  if (h.kind() == Kind::kFiniteSet) {
    // Atomless planar laws (everything below except the wedge spike).
    if (spec.get_if<dist::HeavyBoundaryWedgeGap>() == nullptr) return 0.0;
  }
  return std::visit(
      Overloaded{
          [&](const dist::UniformBox& b) -> std::optional<double> {
            if (h.kind() == Kind::kBox) {
              return box_overlap_fraction(b.lo, b.hi, h.box().lo, h.box().hi);
            }
            if (h.kind() == Kind::kCubeUnion) {
              const auto& cu = h.cube_union();
              std::vector<double> lo, hi;
              double s = 0.0;
              for (auto c : cu.cells) {
                cu.grid.cube_bounds(c, lo, hi);
                s += box_overlap_fraction(b.lo, b.hi, lo, hi);
              }
              return clamp01(s);
            }
            if (auto poly = planar_hull_polygon(h)) {
              const double vol = (b.hi[0] - b.lo[0]) * (b.hi[1] - b.lo[1]);
              return clamp01(area_of(clip_box(*poly, b.lo, b.hi)) / vol);
            }
            return std::nullopt;
          },
          [&](const dist::UniformBall& b) -> std::optional<double> {
            if (h.kind() == Kind::kBallUnion && h.ball_union().centers.size() == 1 &&
                h.ball_union().centers[0] == b.center) {
              const double ratio = std::min(1.0, h.ball_union().radius / b.radius);
              return std::pow(ratio, static_cast<double>(spec.dim()));
            }
            if (auto poly = planar_hull_polygon(h)) {
              return clamp01(disk_area_of(*poly, b.center[0], b.center[1], b.radius) /
                             (kPi * b.radius * b.radius));
            }
            return std::nullopt;
          },
          [&](const dist::HeavyBoundaryCircle& c) -> std::optional<double> {
            return circle_law_mass(c.lambda, h, std::nullopt);
          },
          [&](const dist::HeavyBoundaryWedgeGap& w) -> std::optional<double> {
            const double cut = wedge_cut_mass(w.eps_angle, w.lambda);
            const double spike = h.contains(w.spike) ? cut : 0.0;
            if (h.kind() == Kind::kFiniteSet) return spike;
            auto body = circle_law_mass(w.lambda, h, chord_of(w));
            if (!body) return std::nullopt;
            return clamp01(*body + spike);
          },
          [](const auto&) -> std::optional<double> { return std::nullopt; },
      },
      spec.variant());
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

DistributionSpec::DistributionSpec(Variant v, std::size_t dim, SpaceKind space)
    : v_(std::make_shared<const Variant>(std::move(v))), dim_(dim), space_(space) {}

DistributionSpec DistributionSpec::uniform_box(std::vector<double> lo,
                                               std::vector<double> hi) {
  require(!lo.empty() && lo.size() == hi.size(),
          "uniform_box: lo and hi need equal, positive length");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    require(std::isfinite(lo[i]) && std::isfinite(hi[i]) && lo[i] < hi[i],
            "uniform_box: need lo < hi on every axis");
  }
  const auto d = lo.size();
  return {dist::UniformBox{std::move(lo), std::move(hi)}, d, SpaceKind::kContinuous};
}

DistributionSpec DistributionSpec::uniform_ball(Point center, double radius) {
  require_continuous(center, "uniform_ball: center");
  require(radius > 0.0 && std::isfinite(radius), "uniform_ball: radius must be positive");
  const auto d = center.dim();
  return {dist::UniformBall{std::move(center), radius}, d, SpaceKind::kContinuous};
}

DistributionSpec DistributionSpec::uniform_annulus(Point center, double r_inner,
                                                   double r_outer) {
  require_continuous(center, "uniform_annulus: center");
  require(r_inner >= 0.0 && r_outer > r_inner && std::isfinite(r_outer),
          "uniform_annulus: need 0 <= r_inner < r_outer");
  const auto d = center.dim();
  return {dist::UniformAnnulus{std::move(center), r_inner, r_outer}, d,
          SpaceKind::kContinuous};
}

DistributionSpec DistributionSpec::half_gaussian(Point mean, double sigma,
                                                 std::size_t axis) {
  require_continuous(mean, "half_gaussian: mean");
  require(sigma > 0.0 && std::isfinite(sigma), "half_gaussian: sigma must be positive");
  require(axis < mean.dim(), "half_gaussian: axis out of range");
  const auto d = mean.dim();
  return {dist::HalfGaussian{std::move(mean), sigma, axis}, d, SpaceKind::kContinuous};
}

DistributionSpec DistributionSpec::point_mass(Point p) {
  require(p.dim() >= 1, "point_mass: empty point");
  const auto d = p.dim();
  const auto k = p.kind();
  return {dist::PointMass{std::move(p)}, d, k};
}

DistributionSpec DistributionSpec::finite_support(std::vector<Point> points,
                                                  std::vector<double> probs) {
  require(!points.empty(), "finite_support: no points");
  require(points.size() == probs.size(), "finite_support: points/probs length differ");
  for (const auto& p : points) require_same_space(p, points.front());
  require_probabilities(probs, "finite_support: probs");
  const auto d = points.front().dim();
  const auto k = points.front().kind();
  return {dist::FiniteSupport{std::move(points), std::move(probs)}, d, k};
}

DistributionSpec DistributionSpec::interval_with_gap(double x, double gap, double spike) {
  require(gap > 0.0 && gap < 1.0, "interval_with_gap: eps_gap must be in (0, 1)");
  require(x >= 0.0 && x + gap <= 1.0, "interval_with_gap: need 0 <= x <= 1 - eps_gap");
  require(std::isfinite(spike), "interval_with_gap: spike must be finite");
  return {dist::IntervalWithGap{x, gap, spike}, 1, SpaceKind::kContinuous};
}

DistributionSpec DistributionSpec::heavy_boundary_circle(double lambda) {
  require(lambda >= 0.0 && lambda <= 1.0, "heavy_boundary_circle: lambda must be in [0, 1]");
  return {dist::HeavyBoundaryCircle{lambda}, 2, SpaceKind::kContinuous};
}

DistributionSpec DistributionSpec::heavy_boundary_wedge_gap(double theta, double eps_angle,
                                                            double lambda, Point spike) {
  require(std::isfinite(theta), "heavy_boundary_wedge_gap: theta must be finite");
  require(eps_angle > 0.0 && eps_angle < kPi,
          "heavy_boundary_wedge_gap: eps_angle must be in (0, pi)");
  require(lambda >= 0.0 && lambda <= 1.0,
          "heavy_boundary_wedge_gap: lambda must be in [0, 1]");
  require(!spike.is_discrete() && spike.dim() == 2,
          "heavy_boundary_wedge_gap: spike must be a planar point");
  return {dist::HeavyBoundaryWedgeGap{theta, eps_angle, lambda, std::move(spike)}, 2,
          SpaceKind::kContinuous};
}

DistributionSpec DistributionSpec::naturals_geom(std::int64_t n, std::int64_t m) {
  require(n >= 1 && n <= 1'000'000, "naturals_geom: n must be in [1, 1e6]");
  require(m >= 1 && m <= n, "naturals_geom: need 1 <= m <= n");
  return {dist::NaturalsGeom{n, m}, 1, SpaceKind::kDiscrete};
}

DistributionSpec DistributionSpec::holder_piecewise_1d(
    std::vector<std::pair<double, double>> intervals, std::vector<double> masses,
    double grad_cap) {
  require(!intervals.empty(), "holder_piecewise_1d: no intervals");
  require(intervals.size() == masses.size(),
          "holder_piecewise_1d: intervals/masses length differ");
  require(grad_cap >= 0.0 && std::isfinite(grad_cap),
          "holder_piecewise_1d: grad_cap must be non-negative");
  require_probabilities(masses, "holder_piecewise_1d: masses");
  auto order = intervals;
  std::sort(order.begin(), order.end());
  for (std::size_t i = 0; i < order.size(); ++i) {
    require(std::isfinite(order[i].first) && order[i].first < order[i].second,
            "holder_piecewise_1d: every interval needs lo < hi");
    if (i > 0) {
      require(order[i - 1].second <= order[i].first,
              "holder_piecewise_1d: intervals overlap");
    }
  }
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const double w = intervals[i].second - intervals[i].first;
    const double slope = 4.0 * masses[i] / (w * w);
    require(slope <= grad_cap * (1.0 + 1e-12),
            "holder_piecewise_1d: density slope exceeds grad_cap");
  }
  return {dist::HolderPiecewise1D{std::move(intervals), std::move(masses), grad_cap}, 1,
          SpaceKind::kContinuous};
}

DistributionSpec DistributionSpec::rounded_polygon(std::vector<Point> centers,
                                                   double radius) {
  require(!centers.empty(), "rounded_polygon: no centers");
  for (const auto& c : centers) {
    require(!c.is_discrete() && c.dim() == 2, "rounded_polygon: centers must be planar");
  }
  require(radius > 0.0 && std::isfinite(radius), "rounded_polygon: radius must be positive");
  return {dist::RoundedPolygon{convex_hull_2d(centers), radius}, 2,
          SpaceKind::kContinuous};
}

DistributionSpec DistributionSpec::mixture(std::vector<double> weights,
                                           std::vector<DistributionSpec> components) {
  require(!components.empty(), "mixture: no components");
  require(weights.size() == components.size(), "mixture: weights/components length differ");
  require_probabilities(weights, "mixture: weights");
  for (const auto& c : components) {
    require(c.dim() == components.front().dim() &&
                c.space() == components.front().space(),
            "mixture: components live in different spaces");
  }
  const auto d = components.front().dim();
  const auto k = components.front().space();
  return {dist::Mixture{std::move(weights), std::move(components)}, d, k};
}

std::string DistributionSpec::type_name() const {
  return std::visit(
      Overloaded{
          [](const dist::UniformBox&) { return "uniform_box"; },
          [](const dist::UniformBall&) { return "uniform_ball"; },
          [](const dist::UniformAnnulus&) { return "uniform_annulus"; },
          [](const dist::HalfGaussian&) { return "half_gaussian"; },
          [](const dist::PointMass&) { return "point_mass"; },
          [](const dist::FiniteSupport&) { return "finite_support"; },
          [](const dist::IntervalWithGap&) { return "interval_with_gap"; },
          [](const dist::HeavyBoundaryCircle&) { return "heavy_boundary_circle"; },
          [](const dist::HeavyBoundaryWedgeGap&) { return "heavy_boundary_wedge_gap"; },
          [](const dist::NaturalsGeom&) { return "naturals_geom"; },
          [](const dist::HolderPiecewise1D&) { return "holder_piecewise_1d"; },
          [](const dist::RoundedPolygon&) { return "rounded_polygon"; },
          [](const dist::Mixture&) { return "mixture"; },
      },
      variant());
}

// ---------------------------------------------------------------------------
// Sampling

Point sample(const DistributionSpec& spec, Rng& rng) {
  return std::visit(
      Overloaded{
          [&](const dist::UniformBox& b) {
            std::vector<double> x(b.lo.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
              x[i] = b.lo[i] + uniform01(rng) * (b.hi[i] - b.lo[i]);
            }
            return Point(x);
          },
          [&](const dist::UniformBall& b) {
            const double n = static_cast<double>(b.center.dim());
            const double r = b.radius * std::pow(uniform01(rng), 1.0 / n);
            return shell_point(b.center, r, rng);
          },
          [&](const dist::UniformAnnulus& a) {
            const double n = static_cast<double>(a.center.dim());
            const double lo = std::pow(a.r_inner, n), hi = std::pow(a.r_outer, n);
            const double r = std::pow(lo + uniform01(rng) * (hi - lo), 1.0 / n);
            return shell_point(a.center, std::clamp(r, a.r_inner, a.r_outer), rng);
          },
          [&](const dist::HalfGaussian& g) {
            std::normal_distribution<double> gauss;
            std::vector<double> x(g.mean.dim());
            for (std::size_t i = 0; i < x.size(); ++i) {
              const double z = gauss(rng);
              x[i] = g.mean[i] + g.sigma * (i == g.axis ? -std::abs(z) : z);
            }
            return Point(x);
          },
          [&](const dist::PointMass& p) { return p.point; },
          [&](const dist::FiniteSupport& f) { return f.points[pick_index(f.probs, rng)]; },
          [&](const dist::IntervalWithGap& g) {
            const double u = uniform01(rng);
            if (u >= g.x && u < g.x + g.gap) return Point{g.spike};
            return Point{u};
          },
          [&](const dist::HeavyBoundaryCircle& c) { return sample_circle_law(c.lambda, rng); },
          [&](const dist::HeavyBoundaryWedgeGap& w) {
            if (uniform01(rng) < wedge_cut_mass(w.eps_angle, w.lambda)) return w.spike;
            const Chord chord = chord_of(w);
            while (true) {
              Point p = sample_circle_law(w.lambda, rng);
              if (chord.inside(p[0], p[1])) return p;
            }
          },
          [&](const dist::NaturalsGeom& g) {
            const double head = static_cast<double>(g.n - 1) / static_cast<double>(g.n);
            if (uniform01(rng) < head) {
              auto k = static_cast<std::int64_t>(uniform01(rng) * static_cast<double>(g.n - 1));
              k = std::min<std::int64_t>(k, g.n - 2) + 1;
              if (k >= g.m) ++k;
              return Point::discrete(k);
            }
            std::int64_t k = 1;
            while (k < 1000 && uniform01(rng) >= 0.5) ++k;
            return Point::discrete(g.n + k);
          },
          [&](const dist::HolderPiecewise1D& h) {
            const auto& [lo, hi] = h.intervals[pick_index(h.masses, rng)];
            const double u = 0.5 * (uniform01(rng) + uniform01(rng));
            return Point{lo + u * (hi - lo)};
          },
          [&](const dist::RoundedPolygon& r) {
            double lo[2] = {kInf, kInf}, hi[2] = {-kInf, -kInf};
            for (const auto& c : r.centers) {
              for (int i = 0; i < 2; ++i) {
                lo[i] = std::min(lo[i], c[i] - r.radius);
                hi[i] = std::max(hi[i], c[i] + r.radius);
              }
            }
            while (true) {
              Point p{lo[0] + uniform01(rng) * (hi[0] - lo[0]),
                      lo[1] + uniform01(rng) * (hi[1] - lo[1])};
              if (distance_to_convex_polygon(r.centers, p) <= r.radius) return p;
            }
          },
          [&](const dist::Mixture& m) {
            return sample(m.components[pick_index(m.weights, rng)], rng);
          },
      },
      spec.variant());
}

std::vector<Point> sample_n(const DistributionSpec& spec, std::size_t count, Rng& rng) {
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample(spec, rng));
  return out;
}

// ---------------------------------------------------------------------------
// Support

bool support_contains(const DistributionSpec& spec, const Point& p) {
  if (p.dim() != spec.dim() || p.kind() != spec.space()) {
    throw DimensionMismatch("support_contains: point from another space");
  }
  auto within = [](double d, double r) { return d <= r * (1.0 + kSlack) + kSlack; };
  return std::visit(
      Overloaded{
          [&](const dist::UniformBox& b) {
            for (std::size_t i = 0; i < b.lo.size(); ++i) {
              if (p[i] < b.lo[i] || p[i] > b.hi[i]) return false;
            }
            return true;
          },
          [&](const dist::UniformBall& b) { return within(distance(p, b.center), b.radius); },
          [&](const dist::UniformAnnulus& a) {
            const double d = distance(p, a.center);
            return within(d, a.r_outer) && within(a.r_inner, d);
          },
          [&](const dist::HalfGaussian& g) { return p[g.axis] <= g.mean[g.axis]; },
          [&](const dist::PointMass& m) { return p == m.point; },
          [&](const dist::FiniteSupport& f) {
            for (std::size_t i = 0; i < f.points.size(); ++i) {
              if (f.probs[i] > 0.0 && f.points[i] == p) return true;
            }
            return false;
          },
          [&](const dist::IntervalWithGap& g) {
            const double x = p[0];
            if (x == g.spike) return true;
            if (g.x > 0.0 && x >= 0.0 && x <= g.x) return true;
            if (g.x + g.gap < 1.0 && x >= g.x + g.gap && x <= 1.0) return true;
            return false;
          },
          [&](const dist::HeavyBoundaryCircle& c) {
            return c.lambda > 0.0 ? in_unit_disk(p) : on_unit_circle(p);
          },
          [&](const dist::HeavyBoundaryWedgeGap& w) {
            if (p == w.spike) return true;
            const Chord chord = chord_of(w);
            if (!chord.inside(p[0], p[1])) return false;
            return w.lambda > 0.0 ? in_unit_disk(p) : on_unit_circle(p);
          },
          [&](const dist::NaturalsGeom& g) {
            const auto x = p.index();
            return x >= 1 && x != g.m;
          },
          [&](const dist::HolderPiecewise1D& h) {
            for (std::size_t i = 0; i < h.intervals.size(); ++i) {
              if (h.masses[i] > 0.0 && p[0] >= h.intervals[i].first &&
                  p[0] <= h.intervals[i].second) {
                return true;
              }
            }
            return false;
          },
          [&](const dist::RoundedPolygon& r) {
            return within(distance_to_convex_polygon(r.centers, p), r.radius);
          },
          [&](const dist::Mixture& m) {
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              if (m.weights[i] > 0.0 && support_contains(m.components[i], p)) return true;
            }
            return false;
          },
      },
      spec.variant());
}

// ---------------------------------------------------------------------------
// Region mass

std::optional<double> region_mass(const DistributionSpec& spec, const Hypothesis& region) {
  using Kind = Hypothesis::Kind;
  if (region.dim() != 0 &&
      (region.dim() != spec.dim() ||
       region.discrete() != (spec.space() == SpaceKind::kDiscrete))) {
    throw DimensionMismatch("region_mass: region and distribution spaces differ");
  }
  switch (region.kind()) {
    case Kind::kAll:
      return 1.0;
    case Kind::kEmpty:
      return 0.0;
    case Kind::kComplement: {
      auto inner = region_mass(spec, region.children()[0]);
      if (!inner) return std::nullopt;
      return clamp01(1.0 - *inner);
    }
    default:
      break;
  }
  if (const auto* m = spec.get_if<dist::PointMass>()) {
    return region.contains(m->point) ? 1.0 : 0.0;
  }
  if (const auto* f = spec.get_if<dist::FiniteSupport>()) {
    double s = 0.0;
    for (std::size_t i = 0; i < f->points.size(); ++i) {
      if (region.contains(f->points[i])) s += f->probs[i];
    }
    return clamp01(s);
  }
  if (const auto* mix = spec.get_if<dist::Mixture>()) {
    double s = 0.0;
    for (std::size_t i = 0; i < mix->components.size(); ++i) {
      auto part = region_mass(mix->components[i], region);
      if (!part) return std::nullopt;
      s += mix->weights[i] * *part;
    }
    return clamp01(s);
  }
  if (const auto* g = spec.get_if<dist::NaturalsGeom>()) {
    // The tail beyond n + 64 carries less than 2^-64 of the mass.
    double s = 0.0;
    for (std::int64_t x = 1; x <= g->n + 64; ++x) {
      const double w = naturals_geom_pmf(g->n, g->m, x);
      if (w > 0.0 && region.contains(Point::discrete(x))) s += w;
    }
    return clamp01(s);
  }
  return continuous_mass(spec, region);
}

// ---------------------------------------------------------------------------
// 1-D density helpers

std::optional<double> density_1d(const DistributionSpec& spec, double x) {
  if (spec.dim() != 1 || spec.space() != SpaceKind::kContinuous) return std::nullopt;
  return std::visit(
      Overloaded{
          [&](const dist::UniformBox& b) -> std::optional<double> {
            return (x >= b.lo[0] && x <= b.hi[0]) ? 1.0 / (b.hi[0] - b.lo[0]) : 0.0;
          },
          [&](const dist::UniformBall& b) -> std::optional<double> {
            return std::abs(x - b.center[0]) <= b.radius ? 0.5 / b.radius : 0.0;
          },
          [&](const dist::UniformAnnulus& a) -> std::optional<double> {
            const double d = std::abs(x - a.center[0]);
            return (d >= a.r_inner && d <= a.r_outer) ? 0.5 / (a.r_outer - a.r_inner)
                                                      : 0.0;
          },
          [&](const dist::HalfGaussian& g) -> std::optional<double> {
            if (x > g.mean[0]) return 0.0;
            const double z = (x - g.mean[0]) / g.sigma;
            return 2.0 * std::exp(-0.5 * z * z) / (g.sigma * std::sqrt(2.0 * kPi));
          },
          [&](const dist::HolderPiecewise1D& h) -> std::optional<double> {
            double s = 0.0;
            for (std::size_t i = 0; i < h.intervals.size(); ++i) {
              s += triangle_density(h.intervals[i].first, h.intervals[i].second,
                                    h.masses[i], x);
            }
            return s;
          },
          [&](const dist::Mixture& m) -> std::optional<double> {
            double s = 0.0;
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              auto d = density_1d(m.components[i], x);
              if (!d) return std::nullopt;
              s += m.weights[i] * *d;
            }
            return s;
          },
          [](const auto&) -> std::optional<double> { return std::nullopt; },
      },
      spec.variant());
}

std::vector<double> breakpoints_1d(const DistributionSpec& spec) {
  std::vector<double> out;
  std::visit(Overloaded{
                 [&](const dist::UniformBox& b) { out = {b.lo[0], b.hi[0]}; },
                 [&](const dist::UniformBall& b) {
                   out = {b.center[0] - b.radius, b.center[0] + b.radius};
                 },
                 [&](const dist::UniformAnnulus& a) {
                   const double c = a.center[0];
                   out = {c - a.r_outer, c - a.r_inner, c + a.r_inner, c + a.r_outer};
                 },
                 [&](const dist::HalfGaussian& g) { out = {g.mean[0]}; },
                 [&](const dist::IntervalWithGap& g) {
                   out = {0.0, g.x, g.x + g.gap, 1.0, g.spike};
                 },
                 [&](const dist::HolderPiecewise1D& h) {
                   for (const auto& [lo, hi] : h.intervals) {
                     out.push_back(lo);
                     out.push_back(0.5 * (lo + hi));
                     out.push_back(hi);
                   }
                 },
                 [&](const dist::Mixture& m) {
                   for (const auto& c : m.components) {
                     auto b = breakpoints_1d(c);
                     out.insert(out.end(), b.begin(), b.end());
                   }
                 },
                 [&](const dist::PointMass& p) { out = {p.point[0]}; },
                 [](const auto&) {},
             },
             spec.variant());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::pair<double, double> effective_support_1d(const DistributionSpec& spec) {
  if (const auto* g = spec.get_if<dist::HalfGaussian>()) {
    return {g->mean[0] - 12.0 * g->sigma, g->mean[0]};
  }
  if (const auto* m = spec.get_if<dist::Mixture>()) {
    double lo = kInf, hi = -kInf;
    for (const auto& c : m->components) {
      auto [a, b] = effective_support_1d(c);
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
    return {lo, hi};
  }
  const auto b = breakpoints_1d(spec);
  if (b.empty()) throw InvalidArgument("effective support needs a 1-D law");
  return {b.front(), b.back()};
}

double naturals_geom_pmf(std::int64_t n, std::int64_t m, std::int64_t x) {
  if (x < 1 || x == m) return 0.0;
  if (x <= n) return 1.0 / static_cast<double>(n);
  return std::ldexp(1.0 / static_cast<double>(n), static_cast<int>(
                                                       std::max<std::int64_t>(n - x, -2000)));
}

double wedge_cut_mass(double eps_angle, double lambda) {
  return (1.0 - lambda) * eps_angle / (2.0 * kPi) +
         lambda * (eps_angle - std::sin(eps_angle)) / (2.0 * kPi);
}

double polygon_disk_area(std::span<const Point> ccw_polygon, const Point& center,
                         double radius) {
  return disk_area_of(to_polygon(ccw_polygon), center[0], center[1], radius);
}

}  // namespace oodlab
