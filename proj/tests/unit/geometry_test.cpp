#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oodlab/errors.hpp"
#include "oodlab/geometry.hpp"

using namespace oodlab;

namespace {

std::vector<Point> random_cloud(std::size_t n, std::size_t dim, Rng& rng) {
  std::normal_distribution<double> g;
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> c(dim);
    for (auto& x : c) x = g(rng);
    pts.emplace_back(c);
  }
  return pts;
}

// Caratheodory: in the plane a point of the hull lies in a triangle of three
// of the points (segments and single points included).
bool in_some_triangle(const std::vector<Point>& v, const Point& p, double tol) {
  auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        const double d1 = cross(v[i], v[j], p), d2 = cross(v[j], v[k], p),
                     d3 = cross(v[k], v[i], p);
        const bool neg = d1 < -tol || d2 < -tol || d3 < -tol;
        const bool pos = d1 > tol || d2 > tol || d3 > tol;
        if (neg && pos) continue;
        // Degenerate triangles: fall back to bounding box of the three.
        const double lo0 = std::min({v[i][0], v[j][0], v[k][0]}) - tol;
        const double hi0 = std::max({v[i][0], v[j][0], v[k][0]}) + tol;
        const double lo1 = std::min({v[i][1], v[j][1], v[k][1]}) - tol;
        const double hi1 = std::max({v[i][1], v[j][1], v[k][1]}) + tol;
        if (p[0] >= lo0 && p[0] <= hi0 && p[1] >= lo1 && p[1] <= hi1) return true;
      }
    }
  }
  return false;
}

// Depth by checking every critical normal and its neighbours.
double brute_depth(const std::vector<Point>& pts, const Point& p) {
  std::vector<double> angles = {0.0};
  for (const auto& q : pts) {
    const double dx = q[0] - p[0], dy = q[1] - p[1];
    if (dx == 0.0 && dy == 0.0) continue;
    const double a = std::atan2(dy, dx);
    for (double base : {a + std::numbers::pi / 2, a - std::numbers::pi / 2}) {
      for (double d : {-1e-7, 0.0, 1e-7}) angles.push_back(base + d);
    }
  }
  std::size_t best = pts.size();
  for (double a : angles) {
    const double ux = std::cos(a), uy = std::sin(a);
    std::size_t c = 0;
    for (const auto& q : pts) {
      const double s = ux * (q[0] - p[0]) + uy * (q[1] - p[1]);
      if (s >= -1e-12) ++c;
    }
    best = std::min(best, c);
  }
  return static_cast<double>(best) / static_cast<double>(pts.size());
}

}  // namespace

TEST(UnitBallVolume, KnownValues) {
  EXPECT_NEAR(unit_ball_volume(1), 2.0, 1e-15);
  EXPECT_NEAR(unit_ball_volume(2), std::numbers::pi, 1e-14);
  EXPECT_NEAR(unit_ball_volume(3), 4.0 * std::numbers::pi / 3.0, 1e-14);
  EXPECT_THROW(unit_ball_volume(0), InvalidArgument);
}

TEST(RobustCeil, ForgivesRoundingNoise) {
  EXPECT_EQ(robust_ceil(2.0 / 0.025), 80);
  EXPECT_EQ(robust_ceil(80.0 * (1 + 1e-12)), 80);
  EXPECT_EQ(robust_ceil(80.01), 81);
  EXPECT_EQ(robust_ceil(5.6568), 6);
}

TEST(GridCover, CubeCountMatchesFormula) {
  EXPECT_EQ(grid_cover(Point{0.0, 0.0}, 1.0, 1.0, 2).cube_count(), 9);
  EXPECT_EQ(grid_cover(Point{0.0}, 1.0, 2.0, 1).cube_count(), 1);
  EXPECT_EQ(grid_cover(Point{0.0, 0.0}, 1.0, 0.5, 2).cube_count(), 36);
  EXPECT_EQ(grid_cover(Point{0.0}, 1.0, 0.025, 1).cube_count(), 80);
}

TEST(GridCover, TooFineNamesCount) {
  try {
    grid_cover(Point{0.0, 0.0, 0.0}, 1.0, 1e-3, 3);
    FAIL() << "expected GridTooFine";
  } catch (const GridTooFine& e) {
    EXPECT_GT(e.cube_count(), 1e8);
  }
}

TEST(GridCover, CubesHaveDiameterTau) {
  for (int n = 1; n <= 3; ++n) {
    const auto g = grid_cover(Point::zeros(n), 1.3, 0.37, n);
    EXPECT_NEAR(g.cube_diameter(), 0.37, 1e-12);
    EXPECT_NEAR(g.side() * std::sqrt(static_cast<double>(n)), 0.37, 1e-12);
  }
}

TEST(GridCover, CellsPartitionTheBox) {
  Rng rng(11);
  const auto g = grid_cover(Point{0.5, -0.25}, 1.0, 0.3, 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> lo, hi;
  const double extent = g.side() * static_cast<double>(g.cells_per_axis());
  for (int i = 0; i < 100000; ++i) {
    const Point p{g.anchor()[0] + extent * u(rng), g.anchor()[1] + extent * u(rng)};
    const auto lin = g.linear_cube_of(p);
    ASSERT_EQ(g.linear_index(g.cube_of(p)), lin);
    g.cube_bounds(lin, lo, hi);
    for (int k = 0; k < 2; ++k) {
      ASSERT_LE(lo[k] - 1e-12, p[k]);
      ASSERT_LE(p[k], hi[k] + 1e-12);
    }
  }
  // The ball lies inside the box.
  EXPECT_TRUE(g.contains(Point{1.5, -0.25}));
  EXPECT_TRUE(g.contains(Point{0.5, 0.75}));
}

TEST(GridCover, OutsidePointThrows) {
  const auto g = grid_cover(Point{0.0}, 1.0, 0.5, 1);
  EXPECT_THROW(g.cube_of(Point{1.5}), OutsideGrid);
  EXPECT_NO_THROW(g.cube_of(Point{1.0}));
}

TEST(HullContains, TriangleExamples) {
  const std::vector<Point> tri = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  EXPECT_TRUE(hull_contains(tri, Point{0.2, 0.2}));
  EXPECT_TRUE(hull_contains(tri, Point{0.5, 0.5}));
  EXPECT_FALSE(hull_contains(tri, Point{1.0, 1.0}));
  EXPECT_TRUE(hull_contains(tri, Point{0.0, 0.0}));
}

TEST(HullContains, AgreesWithTriangleOracle) {
  Rng rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    const auto v = random_cloud(3 + rep % 9, 2, rng);
    const ConvexHullIndex idx(v);
    for (const auto& p : random_cloud(25, 2, rng)) {
      ASSERT_EQ(hull_contains(v, p), in_some_triangle(v, p, 1e-9)) << p;
      ASSERT_EQ(idx.contains(p), hull_contains(v, p));
    }
  }
}

TEST(HullContains, PlanarIndexNearEdges) {
  Rng rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    const auto v = random_cloud(5 + rep, 2, rng);
    const auto ring = convex_hull_2d(v);
    const ConvexHullIndex idx(v);
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const auto& a = ring[i];
      const auto& b = ring[(i + 1) % ring.size()];
      const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
      const double nx = (b[1] - a[1]) / len, ny = (a[0] - b[0]) / len;  // outward
      for (double off : {-1e-6, -1e-10, 0.0, 5e-10, 2e-9, 1e-6}) {
        const Point p{0.3 * a[0] + 0.7 * b[0] + off * nx, 0.3 * a[1] + 0.7 * b[1] + off * ny};
        ASSERT_EQ(idx.contains(p), hull_contains(v, p)) << off;
      }
    }
  }
}

TEST(HullContains, HigherDimensionsMatchPruned) {
  Rng rng(9);
  for (std::size_t dim : {3u, 5u, 8u}) {
    const auto v = random_cloud(60, dim, rng);
    const auto pruned = prune_to_extreme_points(v);
    EXPECT_LE(pruned.size(), v.size());
    const ConvexHullIndex idx(pruned);
    for (const auto& p : random_cloud(40, dim, rng)) {
      ASSERT_EQ(hull_contains(v, p), idx.contains(p));
    }
    for (const auto& p : v) ASSERT_TRUE(idx.contains(p));
  }
}

TEST(ConvexHull2d, SquareWithInteriorPoints) {
  const std::vector<Point> pts = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0},
                                  {0.5, 0.5}, {0.5, 0.0}, {0.2, 0.7}};
  const auto hull = convex_hull_2d(pts);
  EXPECT_EQ(hull.size(), 4u);
  EXPECT_NEAR(polygon_area(hull), 1.0, 1e-15);
  EXPECT_NEAR(distance_to_convex_polygon(hull, Point{2.0, 0.5}), 1.0, 1e-15);
  EXPECT_EQ(distance_to_convex_polygon(hull, Point{0.5, 0.5}), 0.0);
}

TEST(TukeyDepth, KnownConfigurations) {
  const std::vector<Point> square = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  EXPECT_NEAR(tukey_depth(square, Point{0.5, 0.5}), 0.5, 1e-12);
  EXPECT_EQ(tukey_depth(square, Point{5.0, 5.0}), 0.0);
  EXPECT_NEAR(tukey_depth(square, Point{0.0, 0.0}), 0.25, 1e-12);
}

TEST(TukeyDepth, ExactMatchesBruteForce) {
  Rng rng(21);
  for (int rep = 0; rep < 30; ++rep) {
    const auto pts = random_cloud(15 + rep, 2, rng);
    for (const auto& p : random_cloud(10, 2, rng)) {
      ASSERT_NEAR(tukey_depth(pts, p), brute_depth(pts, p), 1e-12);
    }
    ASSERT_NEAR(tukey_depth(pts, pts[0]), brute_depth(pts, pts[0]), 1e-12);
  }
}

TEST(TukeyDepth, SampledNeverUndershoots) {
  Rng rng(4);
  const auto pts = random_cloud(200, 2, rng);
  for (const auto& p : random_cloud(20, 2, rng)) {
    EXPECT_GE(tukey_depth(pts, p, TukeyMode::sampled(64, 3)) + 1e-15, tukey_depth(pts, p));
  }
}
