#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "oodlab/errors.hpp"
#include "oodlab/geometry.hpp"

namespace oodlab {

namespace {

struct Vec2 {
  double x, y;
};

int half_of(const Vec2& v) { return (v.y < 0.0 || (v.y == 0.0 && v.x < 0.0)) ? 1 : 0; }

double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

// b lies in the half-open angular range [angle(a), angle(a) + pi).
bool within_half_turn(const Vec2& a, const Vec2& b) {
  const double c = cross(a, b);
  return c > 0.0 || (c == 0.0 && dot(a, b) > 0.0);
}

double exact_depth_2d(std::span<const Point> points, const Point& p) {
  std::size_t coincident = 0;
  std::vector<Vec2> dirs;
  dirs.reserve(points.size());
  for (const auto& q : points) {
    const Vec2 w{q[0] - p[0], q[1] - p[1]};
    if (w.x == 0.0 && w.y == 0.0) {
      ++coincident;
    } else {
      dirs.push_back(w);
    }
  }
  const std::size_t m = dirs.size();
  const double total = static_cast<double>(points.size());
  if (m == 0) return 1.0;
  std::sort(dirs.begin(), dirs.end(), [](const Vec2& a, const Vec2& b) {
    const int ha = half_of(a);
    const int hb = half_of(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0.0;
  });
  // Largest number of directions inside an open half-plane through p, found
  // with a cyclic two-pointer sweep over arcs [theta_i, theta_i + pi).
  std::size_t best = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (j < i + 1) j = i + 1;
    while (j < i + m && within_half_turn(dirs[i], dirs[j % m])) ++j;
    best = std::max(best, j - i);
  }
  return static_cast<double>(coincident + (m - best)) / total;
}

double sampled_depth(std::span<const Point> points, const Point& p,
                     const TukeyMode& mode) {
  if (mode.directions < 1) {
    throw InvalidArgument("sampled Tukey depth needs at least one direction");
  }
  const std::size_t n = p.dim();
  Rng rng(mode.seed);
  std::normal_distribution<double> gauss;
  std::vector<double> u(n);
  std::size_t best = points.size();
  for (int k = 0; k < mode.directions; ++k) {
    for (auto& c : u) c = gauss(rng);
    std::size_t count = 0;
    for (const auto& q : points) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += u[i] * (q[i] - p[i]);
      if (s >= 0.0) ++count;
    }
    best = std::min(best, count);
  }
  return static_cast<double>(best) / static_cast<double>(points.size());
}

}  // namespace

double tukey_depth(std::span<const Point> points, const Point& p,
                   TukeyMode mode) {
  if (points.empty()) throw InvalidArgument("Tukey depth of an empty sample");
  for (const auto& q : points) require_same_space(q, p);
  if (p.is_discrete()) throw InvalidArgument("Tukey depth needs R^n points");
  if (mode.kind == TukeyMode::Kind::kExact2d) {
    if (p.dim() != 2) {
      throw InvalidArgument("exact Tukey depth is only available for n = 2");
    }
    return exact_depth_2d(points, p);
  }
  return sampled_depth(points, p, mode);
}

}  // namespace oodlab
