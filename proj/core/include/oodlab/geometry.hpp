#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "oodlab/point.hpp"

namespace oodlab {

/// Volume c_n of the unit ball in R^n, 1 <= n <= 20.
double unit_ball_volume(int n);

/// ceil(x) that forgives a relative rounding error of 1e-9, so that
/// 2/0.025 evaluates to 80 cells rather than 81.
std::int64_t robust_ceil(double x);

using CubeIndex = std::vector<std::int64_t>;

/// Axis-aligned partition of a box into cells_per_axis^n half-open cubes of
/// equal side. Points on the upper box boundary belong to the last cell.
class AxisGrid {
 public:
  AxisGrid() = default;
  AxisGrid(Point anchor, double side, std::int64_t cells_per_axis);

  const Point& anchor() const { return anchor_; }
  double side() const { return side_; }
  std::int64_t cells_per_axis() const { return cells_; }
  std::size_t dim() const { return anchor_.dim(); }

  /// M = cells_per_axis^n.
  std::int64_t cube_count() const;
  double cube_diameter() const;
  double cube_volume() const;

  /// True if p lies in the closed box (with a 1e-9 relative slack).
  bool contains(const Point& p) const;

  /// Throws OutsideGrid if p is outside the box.
  CubeIndex cube_of(const Point& p) const;
  /// Same as cube_of followed by linear_index, without allocating.
  std::int64_t linear_cube_of(const Point& p) const;

  std::int64_t linear_index(const CubeIndex& idx) const;
  CubeIndex cube_index(std::int64_t linear) const;

  /// Closed bounds [lo, hi] of a cube.
  void cube_bounds(std::int64_t linear, std::vector<double>& lo,
                   std::vector<double>& hi) const;

  /// Same grid translated so that its box is centred on `center`.
  AxisGrid recentered(const Point& center) const;

  friend bool operator==(const AxisGrid&, const AxisGrid&) = default;

 private:
  Point anchor_;
  double side_ = 1.0;
  std::int64_t cells_ = 1;
};

inline constexpr double kDefaultGridCap = 1e8;

/// Grid of cubes with side tau/sqrt(n) (so every cube has diameter tau)
/// covering cl(B(center, R)); the box is centred on `center`.
/// Throws GridTooFine when M exceeds `cap`.
AxisGrid grid_cover(const Point& center, double R, double tau, int n,
                    double cap = kDefaultGridCap);

CubeIndex cube_of(const AxisGrid& grid, const Point& p);

// ---------------------------------------------------------------------------
// Convex hull membership.

inline constexpr double kDefaultHullTol = 1e-9;

/// Outcome of a phase-1 simplex run for { lambda >= 0, sum lambda = 1,
/// sum lambda_i v_i = p }.
struct FeasibilityResult {
  bool feasible = false;
  double residual = 0.0;  // optimal sum of artificial variables
  int iterations = 0;
};

/// Phase-1 simplex on the convex-combination system. Throws Indeterminate
/// when the iteration cap is hit.
FeasibilityResult convex_combination_feasibility(std::span<const Point> vertices,
                                                 const Point& p, double tol);

/// Closed convex hull membership decided by linear feasibility.
bool hull_contains(std::span<const Point> vertices, const Point& p,
                   double tol = kDefaultHullTol);

/// Repeated membership queries against one vertex set. Caches the bounding
/// box and centroid, which settle most far-away queries without the solver.
class ConvexHullIndex {
 public:
  ConvexHullIndex() = default;
  explicit ConvexHullIndex(std::vector<Point> vertices,
                           double tol = kDefaultHullTol);

  bool contains(const Point& p) const;
  const std::vector<Point>& vertices() const { return vertices_; }
  double tol() const { return tol_; }
  std::size_t dim() const { return lo_.size(); }

 private:
  std::vector<Point> vertices_;
  std::vector<double> lo_, hi_, centroid_;
  std::vector<Point> ring_;  // counter-clockwise, planar hulls with area only
  double tol_ = kDefaultHullTol;
};

/// Drops points that are convex combinations of the others. The hull is
/// unchanged; membership queries against the result are far cheaper.
/// 1-D keeps the extremes, 2-D uses a monotone chain, higher dimensions use
/// directional extremes plus feasibility tests.
std::vector<Point> prune_to_extreme_points(std::span<const Point> points);

/// Counter-clockwise hull vertices of planar points (collinear points dropped).
std::vector<Point> convex_hull_2d(std::span<const Point> points);

/// Area enclosed by a counter-clockwise simple polygon.
double polygon_area(std::span<const Point> ccw_polygon);

/// Euclidean distance from p to a convex polygon given counter-clockwise
/// (0 inside).
double distance_to_convex_polygon(std::span<const Point> ccw_polygon,
                                  const Point& p);

// ---------------------------------------------------------------------------
// Tukey (half-space) depth.

struct TukeyMode {
  enum class Kind { kExact2d, kSampled } kind = Kind::kExact2d;
  int directions = 0;
  std::uint64_t seed = 0;

  static TukeyMode exact2d() { return {}; }
  static TukeyMode sampled(int k, std::uint64_t seed = 0) {
    return {Kind::kSampled, k, seed};
  }
};

/// Minimum over closed half-spaces with p on their boundary of the fraction
/// of `points` inside. kSampled only tests `directions` random normals and
/// therefore never undershoots the exact value.
double tukey_depth(std::span<const Point> points, const Point& p,
                   TukeyMode mode = TukeyMode::exact2d());

}  // namespace oodlab
