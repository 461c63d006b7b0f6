#include "oodlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "oodlab/errors.hpp"

namespace oodlab {

double unit_ball_volume(int n) {
  if (n < 1 || n > 20) {
    throw InvalidArgument("unit_ball_volume: n must be in [1, 20], got " +
                          std::to_string(n));
  }
  const double half = 0.5 * n;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

std::int64_t robust_ceil(double x) {
  const double slack = 1e-9 * std::max(1.0, std::abs(x));
  return static_cast<std::int64_t>(std::ceil(x - slack));
}

// ---------------------------------------------------------------------------
// AxisGrid

AxisGrid::AxisGrid(Point anchor, double side, std::int64_t cells_per_axis)
    : anchor_(std::move(anchor)), side_(side), cells_(cells_per_axis) {
  if (anchor_.is_discrete() || anchor_.dim() == 0) {
    throw InvalidArgument("grid anchor must be a continuous point");
  }
  if (!(side_ > 0.0)) throw InvalidArgument("grid side must be positive");
  if (cells_ < 1) throw InvalidArgument("cells_per_axis must be >= 1");
}

std::int64_t AxisGrid::cube_count() const {
  std::int64_t m = 1;
  for (std::size_t i = 0; i < dim(); ++i) m *= cells_;
  return m;
}

double AxisGrid::cube_diameter() const {
  return side_ * std::sqrt(static_cast<double>(dim()));
}

double AxisGrid::cube_volume() const {
  return std::pow(side_, static_cast<double>(dim()));
}

bool AxisGrid::contains(const Point& p) const {
  if (p.dim() != dim() || p.is_discrete()) return false;
  const double extent = side_ * static_cast<double>(cells_);
  const double slack = 1e-9 * std::max(1.0, extent);
  for (std::size_t i = 0; i < dim(); ++i) {
    const double rel = p[i] - anchor_[i];
    if (rel < -slack || rel > extent + slack) return false;
  }
  return true;
}

std::int64_t AxisGrid::linear_cube_of(const Point& p) const {
  if (!contains(p)) {
    throw OutsideGrid("point lies outside the grid box");
  }
  std::int64_t linear = 0;
  std::int64_t stride = 1;
  for (std::size_t i = 0; i < dim(); ++i) {
    auto k = static_cast<std::int64_t>(std::floor((p[i] - anchor_[i]) / side_));
    k = std::clamp<std::int64_t>(k, 0, cells_ - 1);
    linear += k * stride;
    stride *= cells_;
  }
  return linear;
}

CubeIndex AxisGrid::cube_of(const Point& p) const {
  return cube_index(linear_cube_of(p));
}

std::int64_t AxisGrid::linear_index(const CubeIndex& idx) const {
  if (idx.size() != dim()) throw DimensionMismatch("cube index dimension");
  std::int64_t linear = 0;
  std::int64_t stride = 1;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (idx[i] < 0 || idx[i] >= cells_) {
      throw InvalidArgument("cube index out of range");
    }
    linear += idx[i] * stride;
    stride *= cells_;
  }
  return linear;
}

CubeIndex AxisGrid::cube_index(std::int64_t linear) const {
  CubeIndex idx(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    idx[i] = linear % cells_;
    linear /= cells_;
  }
  return idx;
}

void AxisGrid::cube_bounds(std::int64_t linear, std::vector<double>& lo,
                           std::vector<double>& hi) const {
  lo.resize(dim());
  hi.resize(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    const std::int64_t k = linear % cells_;
    linear /= cells_;
    lo[i] = anchor_[i] + static_cast<double>(k) * side_;
    hi[i] = lo[i] + side_;
  }
}

AxisGrid AxisGrid::recentered(const Point& center) const {
  require_same_space(center, anchor_);
  const double half = 0.5 * side_ * static_cast<double>(cells_);
  std::vector<double> a(dim());
  for (std::size_t i = 0; i < dim(); ++i) a[i] = center[i] - half;
  return AxisGrid(Point(a), side_, cells_);
}

AxisGrid grid_cover(const Point& center, double R, double tau, int n,
                    double cap) {
  if (!(R > 0.0) || !(tau > 0.0)) {
    throw InvalidArgument("grid_cover: R and tau must be positive");
  }
  if (n < 1) throw InvalidArgument("grid_cover: n must be >= 1");
  if (center.is_discrete() || center.dim() != static_cast<std::size_t>(n)) {
    throw DimensionMismatch("grid_cover: center dimension differs from n");
  }
  const double root_n = std::sqrt(static_cast<double>(n));
  const double per_axis = 2.0 * R * root_n / tau;
  if (per_axis > cap) throw GridTooFine(std::pow(per_axis, n), cap);
  const std::int64_t cells = std::max<std::int64_t>(1, robust_ceil(per_axis));
  const double m = std::pow(static_cast<double>(cells), n);
  if (m > cap) throw GridTooFine(m, cap);
  const double side = tau / root_n;
  return AxisGrid(Point::zeros(n), side, cells).recentered(center);
}

CubeIndex cube_of(const AxisGrid& grid, const Point& p) {
  return grid.cube_of(p);
}

// ---------------------------------------------------------------------------
// Planar helpers

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double segment_distance(const Point& a, const Point& b, const Point& p) {
  const double dx = b[0] - a[0];
  const double dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) {
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2;
    t = std::clamp(t, 0.0, 1.0);
  }
  const double qx = a[0] + t * dx - p[0];
  const double qy = a[1] + t * dy - p[1];
  return std::sqrt(qx * qx + qy * qy);
}

}  // namespace

std::vector<Point> convex_hull_2d(std::span<const Point> points) {
  std::vector<Point> pts(points.begin(), points.end());
  for (const auto& p : pts) {
    if (p.dim() != 2 || p.is_discrete()) {
      throw DimensionMismatch("convex_hull_2d needs planar points");
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;

  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double polygon_area(std::span<const Point> ccw_polygon) {
  const std::size_t n = ccw_polygon.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ccw_polygon[i];
    const Point& b = ccw_polygon[(i + 1) % n];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  return 0.5 * std::abs(twice);
}

double distance_to_convex_polygon(std::span<const Point> ccw_polygon,
                                  const Point& p) {
  const std::size_t n = ccw_polygon.size();
  if (n == 0) throw InvalidArgument("empty polygon");
  if (n == 1) return distance(ccw_polygon[0], p);
  if (n == 2) return segment_distance(ccw_polygon[0], ccw_polygon[1], p);
  bool inside = true;
  for (std::size_t i = 0; i < n && inside; ++i) {
    if (cross(ccw_polygon[i], ccw_polygon[(i + 1) % n], p) < 0.0) {
      inside = false;
    }
  }
  if (inside) return 0.0;
  double best = segment_distance(ccw_polygon[n - 1], ccw_polygon[0], p);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    best = std::min(best, segment_distance(ccw_polygon[i], ccw_polygon[i + 1], p));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Extreme-point pruning

namespace {

// Fixed pseudo-random unit directions, so pruning is deterministic.
std::vector<std::vector<double>> probe_directions(std::size_t n) {
  std::vector<std::vector<double>> dirs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    dirs.push_back(e);
    e[i] = -1.0;
    dirs.push_back(e);
  }
  Rng rng(0x5eed5eedULL);
  std::normal_distribution<double> gauss;
  for (std::size_t k = 0; k < 16 * n; ++k) {
    std::vector<double> u(n);
    double s = 0.0;
    for (auto& c : u) {
      c = gauss(rng);
      s += c * c;
    }
    s = std::sqrt(s);
    for (auto& c : u) c /= s;
    dirs.push_back(std::move(u));
  }
  return dirs;
}

}  // namespace

std::vector<Point> prune_to_extreme_points(std::span<const Point> points) {
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return pts;
  const std::size_t n = pts.front().dim();
  for (const auto& p : pts) {
    if (p.dim() != n || p.is_discrete()) {
      throw DimensionMismatch("hull points must share one continuous space");
    }
  }
  if (pts.size() <= n + 1) return pts;
  if (n == 1) return {pts.front(), pts.back()};
  if (n == 2) return convex_hull_2d(pts);

  // Directional extremes are hull vertices; anything inside their hull can
  // go. The survivors are then thinned one by one.
  const auto dirs = probe_directions(n);
  std::vector<char> is_seed(pts.size(), 0);
  for (const auto& u : dirs) {
    std::size_t best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pts.size(); ++j) {
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i) v += u[i] * pts[j][i];
      if (v > best_val) {
        best_val = v;
        best = j;
      }
    }
    is_seed[best] = 1;
  }
  std::vector<Point> seeds;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (is_seed[j]) seeds.push_back(pts[j]);
  }
  constexpr double kPruneTol = 1e-12;
  ConvexHullIndex seed_hull(seeds, kPruneTol);
  std::vector<Point> keep = seeds;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (!is_seed[j] && !seed_hull.contains(pts[j])) keep.push_back(pts[j]);
  }

  constexpr std::size_t kThinLimit = 4000;
  if (keep.size() > kThinLimit) return keep;
  for (std::size_t j = 0; j < keep.size() && keep.size() > n + 1;) {
    std::vector<Point> others;
    others.reserve(keep.size() - 1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
      if (i != j) others.push_back(keep[i]);
    }
    if (hull_contains(others, keep[j], kPruneTol)) {
      keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(j));
    } else {
      ++j;
    }
  }
  return keep;
}

}  // namespace oodlab
