#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "oodlab/geometry.hpp"
#include "oodlab/point.hpp"

namespace oodlab {

/// A real interval; infinite endpoints are allowed and always open.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(double x) const {
    return (x > lo || (lo_closed && x == lo)) &&
           (x < hi || (hi_closed && x == hi));
  }
  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted, disjoint, non-touching intervals (a canonical form).
using IntervalList = std::vector<Interval>;

IntervalList normalize_intervals(IntervalList intervals);
IntervalList intersect_intervals(const IntervalList& a, const IntervalList& b);
IntervalList complement_intervals(const IntervalList& a);
IntervalList unite_intervals(const IntervalList& a, const IntervalList& b);

enum class CombineOp { kUnion, kIntersection, kComplement };

/// A subset of the instance space, evaluated as its indicator. Hypotheses are
/// immutable values with cheap copies.
class Hypothesis {
 public:
  enum class Kind {
    kAll,
    kEmpty,
    kBallUnion,
    kCubeUnion,
    kConvexHull,
    kFiniteSet,
    kIntervalSet,
    kBox,
    kComplement,
    kUnion,
    kIntersection,
  };

  struct BallUnion {
    std::vector<Point> centers;
    double radius = 0.0;
    bool closed = true;
  };
  struct CubeUnion {
    AxisGrid grid;
    std::vector<std::int64_t> cells;  // sorted linear indices
  };
  struct ConvexHull {
    ConvexHullIndex index;  // pruned vertex set
  };
  struct FiniteSet {
    std::vector<Point> points;  // sorted, unique
  };
  struct IntervalSet {
    IntervalList intervals;
  };
  /// Closed axis-aligned box.
  struct Box {
    std::vector<double> lo, hi;
  };

  /// Default-constructed hypotheses are Empty.
  Hypothesis();

  static Hypothesis all();
  static Hypothesis empty();
  static Hypothesis ball_union(std::vector<Point> centers, double radius,
                               bool closed = true);
  static Hypothesis cube_union(AxisGrid grid, std::vector<std::int64_t> cells);
  static Hypothesis convex_hull(std::span<const Point> samples,
                                double tol = kDefaultHullTol);
  static Hypothesis finite_set(std::vector<Point> points);
  static Hypothesis interval_set(IntervalList intervals);
  static Hypothesis box(std::vector<double> lo, std::vector<double> hi);

  Kind kind() const;
  /// 0 for All / Empty, which fit any space.
  std::size_t dim() const;
  /// Discrete-space hypotheses are only built from discrete points.
  bool discrete() const;

  bool contains(const Point& p) const;
  int eval(const Point& p) const { return contains(p) ? 1 : 0; }

  const BallUnion& ball_union() const;
  const CubeUnion& cube_union() const;
  const ConvexHull& convex_hull() const;
  const FiniteSet& finite_set() const;
  const IntervalSet& interval_set() const;
  const Box& box() const;
  /// Operands of Complement / Union / Intersection.
  std::span<const Hypothesis> children() const;

  /// Exact 1-D description as intervals, when every leaf is expressible
  /// (all shapes except discrete finite sets). nullopt otherwise.
  std::optional<IntervalList> as_intervals() const;

 private:
  struct Node;
  explicit Hypothesis(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;

  friend Hypothesis combine(CombineOp op, std::span<const Hypothesis> hs);
};

/// Pointwise boolean combination. Interval sets stay interval sets; All and
/// Empty are absorbed; a double complement collapses.
/// Throws InvalidArgument on an empty list (or a complement of != 1 operand)
/// and DimensionMismatch across spaces.
Hypothesis combine(CombineOp op, std::span<const Hypothesis> hs);
Hypothesis complement(const Hypothesis& h);
Hypothesis unite(const Hypothesis& a, const Hypothesis& b);
Hypothesis intersect(const Hypothesis& a, const Hypothesis& b);

std::ostream& operator<<(std::ostream& os, const Hypothesis& h);

}  // namespace oodlab
