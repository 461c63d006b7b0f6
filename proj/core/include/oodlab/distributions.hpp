#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "oodlab/hypothesis.hpp"
#include "oodlab/point.hpp"

namespace oodlab {

class DistributionSpec;

namespace dist {

struct UniformBox {
  std::vector<double> lo, hi;
};
struct UniformBall {
  Point center;
  double radius = 1.0;
};
/// Uniform on { r_inner <= |x - center| <= r_outer }.
struct UniformAnnulus {
  Point center;
  double r_inner = 0.0, r_outer = 1.0;
};
/// Isotropic Gaussian N(mean, sigma^2 I) conditioned on x[axis] <= mean[axis].
struct HalfGaussian {
  Point mean;
  double sigma = 1.0;
  std::size_t axis = 0;
};
struct PointMass {
  Point point;
};
struct FiniteSupport {
  std::vector<Point> points;
  std::vector<double> probs;
};
/// (1 - gap) U([0,1] \ (x, x + gap)) + gap * {spike}.
struct IntervalWithGap {
  double x = 0.0, gap = 0.1, spike = 3.0;
};
/// (1 - lambda) uniform on the unit circle + lambda uniform on the open disk.
struct HeavyBoundaryCircle {
  double lambda = 0.1;
};
/// The circle law restricted to the larger piece of the unit disk cut by the
/// chord between angles theta and theta + eps_angle, with the cut-off mass
/// moved to `spike`.
struct HeavyBoundaryWedgeGap {
  double theta = 0.0, eps_angle = 0.1, lambda = 0.1;
  Point spike;
};
/// pmf 1/n on {1..n} \ {m} and 2^(n-x)/n for x > n.
struct NaturalsGeom {
  std::int64_t n = 1, m = 1;
};
/// Symmetric triangle densities, one per interval, carrying the given masses.
struct HolderPiecewise1D {
  std::vector<std::pair<double, double>> intervals;
  std::vector<double> masses;
  double grad_cap = 1.0;
};
/// Uniform on conv(centers) dilated by a closed ball of `radius` (planar).
struct RoundedPolygon {
  std::vector<Point> centers;
  double radius = 0.0;
};
struct Mixture {
  std::vector<double> weights;
  std::vector<DistributionSpec> components;
};

}  // namespace dist

/// An immutable distribution over R^n, N or a finite index set. Build through
/// the validating factories.
class DistributionSpec {
 public:
  using Variant =
      std::variant<dist::UniformBox, dist::UniformBall, dist::UniformAnnulus,
                   dist::HalfGaussian, dist::PointMass, dist::FiniteSupport,
                   dist::IntervalWithGap, dist::HeavyBoundaryCircle,
                   dist::HeavyBoundaryWedgeGap, dist::NaturalsGeom,
                   dist::HolderPiecewise1D, dist::RoundedPolygon, dist::Mixture>;

  static DistributionSpec uniform_box(std::vector<double> lo, std::vector<double> hi);
  static DistributionSpec uniform_ball(Point center, double radius);
  static DistributionSpec uniform_annulus(Point center, double r_inner,
                                          double r_outer);
  static DistributionSpec half_gaussian(Point mean, double sigma,
                                        std::size_t axis = 0);
  static DistributionSpec point_mass(Point p);
  static DistributionSpec finite_support(std::vector<Point> points,
                                         std::vector<double> probs);
  static DistributionSpec interval_with_gap(double x, double gap, double spike);
  static DistributionSpec heavy_boundary_circle(double lambda);
  static DistributionSpec heavy_boundary_wedge_gap(double theta, double eps_angle,
                                                   double lambda, Point spike);
  static DistributionSpec naturals_geom(std::int64_t n, std::int64_t m);
  static DistributionSpec holder_piecewise_1d(
      std::vector<std::pair<double, double>> intervals,
      std::vector<double> masses, double grad_cap);
  static DistributionSpec rounded_polygon(std::vector<Point> centers, double radius);
  static DistributionSpec mixture(std::vector<double> weights,
                                  std::vector<DistributionSpec> components);

  const Variant& variant() const { return *v_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(v_.get());
  }

  /// JSON tag, e.g. "uniform_box".
  std::string type_name() const;
  std::size_t dim() const { return dim_; }
  SpaceKind space() const { return space_; }

 private:
  DistributionSpec(Variant v, std::size_t dim, SpaceKind space);

  std::shared_ptr<const Variant> v_;
  std::size_t dim_ = 1;
  SpaceKind space_ = SpaceKind::kContinuous;
};

Point sample(const DistributionSpec& spec, Rng& rng);
std::vector<Point> sample_n(const DistributionSpec& spec, std::size_t count, Rng& rng);

/// Closed-support membership. Distance tests carry a 1e-12 relative slack.
bool support_contains(const DistributionSpec& spec, const Point& p);

/// Exact probability of the region, or nullopt when no closed form is
/// implemented for this (distribution, shape) pair.
/// Throws DimensionMismatch when the spaces differ.
std::optional<double> region_mass(const DistributionSpec& spec, const Hypothesis& region);

/// Density of the absolutely continuous part of a 1-D law at x; nullopt for
/// laws with atoms or in other spaces.
std::optional<double> density_1d(const DistributionSpec& spec, double x);
/// Points where a 1-D density may be discontinuous or kinked.
std::vector<double> breakpoints_1d(const DistributionSpec& spec);
/// Interval outside which the 1-D law has (numerically) no mass.
std::pair<double, double> effective_support_1d(const DistributionSpec& spec);

double naturals_geom_pmf(std::int64_t n, std::int64_t m, std::int64_t x);
/// Circle-law mass of the small piece cut off by a chord spanning eps_angle.
double wedge_cut_mass(double eps_angle, double lambda);
/// Area of the part of a convex polygon inside a disk.
double polygon_disk_area(std::span<const Point> ccw_polygon, const Point& center,
                         double radius);

nlohmann::json to_json(const DistributionSpec& spec);
/// Throws InvalidArgument naming the offending field.
DistributionSpec distribution_from_json(const nlohmann::json& j);

}  // namespace oodlab
