#include "oodlab/hypothesis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <unordered_map>
#include <variant>

#include "oodlab/errors.hpp"

namespace oodlab {

namespace {

constexpr std::size_t kHashDims = 4;
using CellKey = std::array<std::int64_t, kHashDims>;

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto v : k) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

using Children = std::vector<Hypothesis>;

}  // namespace

struct Hypothesis::Node {
  Kind kind = Kind::kEmpty;
  std::size_t dim = 0;
  bool discrete = false;
  std::variant<std::monostate, BallUnion, CubeUnion, ConvexHull, FiniteSet,
               IntervalSet, Box, Children>
      shape;

  // Ball-union lookup: sorted coordinates in 1-D, a hash grid with cell side
  // equal to the radius for 2 <= n <= 4, a plain scan above that.
  std::vector<double> sorted_1d;
  std::unordered_map<CellKey, std::vector<std::uint32_t>, CellKeyHash> buckets;

  CellKey key_of(const Point& p, double side) const {
    CellKey k{};
    for (std::size_t i = 0; i < dim; ++i) {
      k[i] = static_cast<std::int64_t>(std::floor(p[i] / side));
    }
    return k;
  }

  bool ball_hit(const BallUnion& b, const Point& p) const {
    const double r2 = b.radius * b.radius;
    auto hit = [&](double d2) { return b.closed ? d2 <= r2 : d2 < r2; };
    if (b.centers.empty()) return false;
    if (dim == 1) {
      const double x = p[0];
      auto it = std::lower_bound(sorted_1d.begin(), sorted_1d.end(), x - b.radius);
      const auto pos = it - sorted_1d.begin();
      for (auto j = std::max<std::ptrdiff_t>(0, pos - 1);
           j <= std::min<std::ptrdiff_t>(pos + 1, std::ssize(sorted_1d) - 1); ++j) {
        const double d = sorted_1d[static_cast<std::size_t>(j)] - x;
        if (hit(d * d)) return true;
      }
      return false;
    }
    if (dim <= kHashDims) {
      const CellKey base = key_of(p, b.radius);
      CellKey k = base;
      std::size_t total = 1;
      for (std::size_t i = 0; i < dim; ++i) total *= 3;
      for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = 0; i < dim; ++i) {
          k[i] = base[i] + static_cast<std::int64_t>(c % 3) - 1;
          c /= 3;
        }
        auto it = buckets.find(k);
        if (it == buckets.end()) continue;
        for (auto idx : it->second) {
          if (hit(squared_distance(b.centers[idx], p))) return true;
        }
      }
      return false;
    }
    for (const auto& c : b.centers) {
      if (hit(squared_distance(c, p))) return true;
    }
    return false;
  }
};

namespace {

void require_positive_dim(std::size_t d) {
  if (d == 0) throw InvalidArgument("hypothesis points must have dimension >= 1");
}

}  // namespace

Hypothesis::Hypothesis() : Hypothesis(empty()) {}

Hypothesis::Hypothesis(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Hypothesis Hypothesis::all() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::kAll;
    return n;
  }();
  return Hypothesis(node);
}

Hypothesis Hypothesis::empty() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::kEmpty;
    return n;
  }();
  return Hypothesis(node);
}

Hypothesis Hypothesis::ball_union(std::vector<Point> centers, double radius,
                                  bool closed) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("ball radius must be positive and finite");
  }
  if (centers.empty()) return empty();
  auto n = std::make_shared<Node>();
  n->kind = Kind::kBallUnion;
  n->dim = centers.front().dim();
  require_positive_dim(n->dim);
  for (const auto& c : centers) {
    require_same_space(c, centers.front());
    if (c.is_discrete()) throw InvalidArgument("balls need R^n centers");
  }
  if (n->dim == 1) {
    n->sorted_1d.reserve(centers.size());
    for (const auto& c : centers) n->sorted_1d.push_back(c[0]);
    std::sort(n->sorted_1d.begin(), n->sorted_1d.end());
  } else if (n->dim <= kHashDims) {
    for (std::size_t i = 0; i < centers.size(); ++i) {
      n->buckets[n->key_of(centers[i], radius)].push_back(
          static_cast<std::uint32_t>(i));
    }
  }
  n->shape = BallUnion{std::move(centers), radius, closed};
  return Hypothesis(n);
}

Hypothesis Hypothesis::cube_union(AxisGrid grid, std::vector<std::int64_t> cells) {
  const std::int64_t m = grid.cube_count();
  for (auto c : cells) {
    if (c < 0 || c >= m) throw InvalidArgument("cube index outside the grid");
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  if (cells.empty()) return empty();
  auto n = std::make_shared<Node>();
  n->kind = Kind::kCubeUnion;
  n->dim = grid.dim();
  n->shape = CubeUnion{std::move(grid), std::move(cells)};
  return Hypothesis(n);
}

Hypothesis Hypothesis::convex_hull(std::span<const Point> samples, double tol) {
  if (samples.empty()) throw InvalidArgument("convex hull of no samples");
  auto n = std::make_shared<Node>();
  n->kind = Kind::kConvexHull;
  n->dim = samples.front().dim();
  require_positive_dim(n->dim);
  n->shape = ConvexHull{ConvexHullIndex(prune_to_extreme_points(samples), tol)};
  return Hypothesis(n);
}

Hypothesis Hypothesis::finite_set(std::vector<Point> points) {
  if (points.empty()) return empty();
  for (const auto& p : points) require_same_space(p, points.front());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  auto n = std::make_shared<Node>();
  n->kind = Kind::kFiniteSet;
  n->dim = points.front().dim();
  require_positive_dim(n->dim);
  n->discrete = points.front().is_discrete();
  n->shape = FiniteSet{std::move(points)};
  return Hypothesis(n);
}

Hypothesis Hypothesis::interval_set(IntervalList intervals) {
  auto norm = normalize_intervals(std::move(intervals));
  if (norm.empty()) return empty();
  auto n = std::make_shared<Node>();
  n->kind = Kind::kIntervalSet;
  n->dim = 1;
  n->shape = IntervalSet{std::move(norm)};
  return Hypothesis(n);
}

Hypothesis Hypothesis::box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.size() != hi.size() || lo.empty()) {
    throw InvalidArgument("box bounds must have equal, positive length");
  }
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] <= hi[i])) throw InvalidArgument("box needs lo <= hi per axis");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::kBox;
  n->dim = lo.size();
  n->shape = Box{std::move(lo), std::move(hi)};
  return Hypothesis(n);
}

Hypothesis::Kind Hypothesis::kind() const { return node_->kind; }
std::size_t Hypothesis::dim() const { return node_->dim; }
bool Hypothesis::discrete() const { return node_->discrete; }

const Hypothesis::BallUnion& Hypothesis::ball_union() const {
  return std::get<BallUnion>(node_->shape);
}
const Hypothesis::CubeUnion& Hypothesis::cube_union() const {
  return std::get<CubeUnion>(node_->shape);
}
const Hypothesis::ConvexHull& Hypothesis::convex_hull() const {
  return std::get<ConvexHull>(node_->shape);
}
const Hypothesis::FiniteSet& Hypothesis::finite_set() const {
  return std::get<FiniteSet>(node_->shape);
}
const Hypothesis::IntervalSet& Hypothesis::interval_set() const {
  return std::get<IntervalSet>(node_->shape);
}
const Hypothesis::Box& Hypothesis::box() const { return std::get<Box>(node_->shape); }

std::span<const Hypothesis> Hypothesis::children() const {
  if (const auto* c = std::get_if<Children>(&node_->shape)) return *c;
  return {};
}

bool Hypothesis::contains(const Point& p) const {
  const Node& n = *node_;
  if (n.dim != 0 && (p.dim() != n.dim || p.is_discrete() != n.discrete)) {
    throw DimensionMismatch("hypothesis evaluated at a point of another space");
  }
  switch (n.kind) {
    case Kind::kAll:
      return true;
    case Kind::kEmpty:
      return false;
    case Kind::kBallUnion:
      return n.ball_hit(std::get<BallUnion>(n.shape), p);
    case Kind::kCubeUnion: {
      const auto& cu = std::get<CubeUnion>(n.shape);
      if (!cu.grid.contains(p)) return false;
      return std::binary_search(cu.cells.begin(), cu.cells.end(),
                                cu.grid.linear_cube_of(p));
    }
    case Kind::kConvexHull:
      return std::get<ConvexHull>(n.shape).index.contains(p);
    case Kind::kFiniteSet: {
      const auto& pts = std::get<FiniteSet>(n.shape).points;
      return std::binary_search(pts.begin(), pts.end(), p);
    }
    case Kind::kIntervalSet: {
      const auto& ivs = std::get<IntervalSet>(n.shape).intervals;
      const double x = p[0];
      auto it = std::upper_bound(ivs.begin(), ivs.end(), x,
                                 [](double v, const Interval& iv) { return v < iv.lo; });
      if (it == ivs.begin()) return false;
      return std::prev(it)->contains(x);
    }
    case Kind::kBox: {
      const auto& b = std::get<Box>(n.shape);
      for (std::size_t i = 0; i < n.dim; ++i) {
        if (p[i] < b.lo[i] || p[i] > b.hi[i]) return false;
      }
      return true;
    }
    case Kind::kComplement:
      return !std::get<Children>(n.shape)[0].contains(p);
    case Kind::kUnion:
      for (const auto& c : std::get<Children>(n.shape)) {
        if (c.contains(p)) return true;
      }
      return false;
    case Kind::kIntersection:
      for (const auto& c : std::get<Children>(n.shape)) {
        if (!c.contains(p)) return false;
      }
      return true;
  }
  return false;
}

std::optional<IntervalList> Hypothesis::as_intervals() const {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const Node& n = *node_;
  if (n.dim > 1 || n.discrete) return std::nullopt;
  switch (n.kind) {
    case Kind::kAll:
      return IntervalList{{-kInf, kInf, false, false}};
    case Kind::kEmpty:
      return IntervalList{};
    case Kind::kBallUnion: {
      const auto& b = std::get<BallUnion>(n.shape);
      IntervalList out;
      for (double c : n.sorted_1d) {
        out.push_back({c - b.radius, c + b.radius, b.closed, b.closed});
      }
      return normalize_intervals(std::move(out));
    }
    case Kind::kCubeUnion: {
      const auto& cu = std::get<CubeUnion>(n.shape);
      const double a = cu.grid.anchor()[0];
      const double s = cu.grid.side();
      const auto last = cu.grid.cells_per_axis() - 1;
      IntervalList out;
      for (auto k : cu.cells) {
        out.push_back({a + static_cast<double>(k) * s,
                       a + static_cast<double>(k + 1) * s, true, k == last});
      }
      return normalize_intervals(std::move(out));
    }
    case Kind::kConvexHull: {
      const auto& v = std::get<ConvexHull>(n.shape).index.vertices();
      double lo = kInf, hi = -kInf;
      for (const auto& p : v) {
        lo = std::min(lo, p[0]);
        hi = std::max(hi, p[0]);
      }
      const double tol = std::get<ConvexHull>(n.shape).index.tol();
      return IntervalList{{lo - tol, hi + tol, true, true}};
    }
    case Kind::kFiniteSet: {
      IntervalList out;
      for (const auto& p : std::get<FiniteSet>(n.shape).points) {
        out.push_back({p[0], p[0], true, true});
      }
      return normalize_intervals(std::move(out));
    }
    case Kind::kIntervalSet:
      return std::get<IntervalSet>(n.shape).intervals;
    case Kind::kBox: {
      const auto& b = std::get<Box>(n.shape);
      return IntervalList{{b.lo[0], b.hi[0], true, true}};
    }
    case Kind::kComplement: {
      auto inner = std::get<Children>(n.shape)[0].as_intervals();
      if (!inner) return std::nullopt;
      return complement_intervals(*inner);
    }
    case Kind::kUnion:
    case Kind::kIntersection: {
      const auto& cs = std::get<Children>(n.shape);
      std::optional<IntervalList> acc;
      for (const auto& c : cs) {
        auto iv = c.as_intervals();
        if (!iv) return std::nullopt;
        if (!acc) {
          acc = std::move(iv);
        } else if (n.kind == Kind::kUnion) {
          acc = unite_intervals(*acc, *iv);
        } else {
          acc = intersect_intervals(*acc, *iv);
        }
      }
      return acc;
    }
  }
  return std::nullopt;
}

Hypothesis combine(CombineOp op, std::span<const Hypothesis> hs) {
  using Kind = Hypothesis::Kind;
  if (hs.empty()) throw InvalidArgument("combine needs at least one hypothesis");
  if (op == CombineOp::kComplement && hs.size() != 1) {
    throw InvalidArgument("complement takes exactly one hypothesis");
  }
  std::size_t dim = 0;
  bool discrete = false;
  for (const auto& h : hs) {
    if (h.dim() == 0) continue;
    if (dim == 0) {
      dim = h.dim();
      discrete = h.discrete();
    } else if (h.dim() != dim || h.discrete() != discrete) {
      throw DimensionMismatch("combine: hypotheses live in different spaces");
    }
  }

  auto make = [&](Kind kind, Children children) {
    auto n = std::make_shared<Hypothesis::Node>();
    n->kind = kind;
    n->dim = dim;
    n->discrete = discrete;
    n->shape = std::move(children);
    return Hypothesis(n);
  };

  if (op == CombineOp::kComplement) {
    const Hypothesis& h = hs[0];
    switch (h.kind()) {
      case Kind::kAll:
        return Hypothesis::empty();
      case Kind::kEmpty:
        return Hypothesis::all();
      case Kind::kComplement:
        return h.children()[0];
      case Kind::kIntervalSet: {
        auto c = complement_intervals(h.interval_set().intervals);
        if (c.size() == 1 && std::isinf(c[0].lo) && std::isinf(c[0].hi)) {
          return Hypothesis::all();
        }
        return Hypothesis::interval_set(std::move(c));
      }
      default:
        return make(Kind::kComplement, {h});
    }
  }

  const bool is_union = op == CombineOp::kUnion;
  const Kind absorbing = is_union ? Kind::kAll : Kind::kEmpty;
  const Kind neutral = is_union ? Kind::kEmpty : Kind::kAll;
  const Kind same = is_union ? Kind::kUnion : Kind::kIntersection;
  Children kept;
  bool all_intervals = true;
  for (const auto& h : hs) {
    if (h.kind() == absorbing) return h;
    if (h.kind() == neutral) continue;
    if (h.kind() == same) {
      for (const auto& c : h.children()) kept.push_back(c);
    } else {
      kept.push_back(h);
    }
  }
  if (kept.empty()) {
    return is_union ? Hypothesis::empty() : Hypothesis::all();
  }
  if (kept.size() == 1) return kept.front();
  // In 1-D every shape with an interval form collapses to one interval set.
  std::vector<IntervalList> lists;
  for (const auto& h : kept) {
    auto iv = (dim == 1 && !discrete) ? h.as_intervals() : std::nullopt;
    if (!iv) {
      all_intervals = false;
      break;
    }
    lists.push_back(std::move(*iv));
  }
  if (all_intervals) {
    IntervalList acc = lists.front();
    for (std::size_t i = 1; i < lists.size(); ++i) {
      acc = is_union ? unite_intervals(acc, lists[i]) : intersect_intervals(acc, lists[i]);
    }
    if (acc.size() == 1 && std::isinf(acc[0].lo) && std::isinf(acc[0].hi)) {
      return Hypothesis::all();
    }
    return Hypothesis::interval_set(std::move(acc));
  }
  return make(same, std::move(kept));
}

Hypothesis complement(const Hypothesis& h) {
  return combine(CombineOp::kComplement, std::span<const Hypothesis>(&h, 1));
}

Hypothesis unite(const Hypothesis& a, const Hypothesis& b) {
  const Hypothesis hs[] = {a, b};
  return combine(CombineOp::kUnion, hs);
}

Hypothesis intersect(const Hypothesis& a, const Hypothesis& b) {
  const Hypothesis hs[] = {a, b};
  return combine(CombineOp::kIntersection, hs);
}

std::ostream& operator<<(std::ostream& os, const Hypothesis& h) {
  using Kind = Hypothesis::Kind;
  switch (h.kind()) {
    case Kind::kAll:
      return os << "All";
    case Kind::kEmpty:
      return os << "Empty";
    case Kind::kBallUnion:
      return os << "BallUnion(" << h.ball_union().centers.size()
                << " balls, r=" << h.ball_union().radius << ")";
    case Kind::kCubeUnion:
      return os << "CubeUnion(" << h.cube_union().cells.size() << " of "
                << h.cube_union().grid.cube_count() << " cubes)";
    case Kind::kConvexHull:
      return os << "ConvexHull(" << h.convex_hull().index.vertices().size()
                << " vertices)";
    case Kind::kFiniteSet: {
      os << "FiniteSet{";
      const auto& pts = h.finite_set().points;
      for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? ", " : "") << pts[i];
      return os << "}";
    }
    case Kind::kIntervalSet: {
      os << "IntervalSet{";
      const auto& ivs = h.interval_set().intervals;
      for (std::size_t i = 0; i < ivs.size(); ++i) {
        const auto& iv = ivs[i];
        os << (i ? " U " : "") << (iv.lo_closed ? '[' : '(') << iv.lo << ", "
           << iv.hi << (iv.hi_closed ? ']' : ')');
      }
      return os << "}";
    }
    case Kind::kBox:
      return os << "Box(" << h.dim() << "-d)";
    case Kind::kComplement:
      return os << "Complement(" << h.children()[0] << ")";
    case Kind::kUnion:
    case Kind::kIntersection: {
      os << (h.kind() == Kind::kUnion ? "Union(" : "Intersection(");
      const auto cs = h.children();
      for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? ", " : "") << cs[i];
      return os << ")";
    }
  }
  return os;
}

}  // namespace oodlab
