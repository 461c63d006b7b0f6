#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "oodlab/errors.hpp"
#include "oodlab/geometry.hpp"

namespace oodlab {

namespace {

// Dense phase-1 tableau for
//   sum_j lambda_j (v_j - p) / s + a_i = 0   (i < n)
//   sum_j lambda_j             + a_n = 1
// with s the largest |v_j - p| entry so that all coefficients are O(1).
class Phase1 {
 public:
  Phase1(std::span<const Point> vertices, const Point& p)
      : k_(vertices.size()), n_(p.dim()), rows_(n_ + 1), cols_(k_ + rows_ + 1) {
    scale_ = 1.0;
    for (const auto& v : vertices) {
      for (std::size_t i = 0; i < n_; ++i) {
        scale_ = std::max(scale_, std::abs(v[i] - p[i]));
      }
    }
    t_.assign(rows_ * cols_, 0.0);
    for (std::size_t j = 0; j < k_; ++j) {
      for (std::size_t i = 0; i < n_; ++i) {
        at(i, j) = (vertices[j][i] - p[i]) / scale_;
      }
      at(n_, j) = 1.0;
    }
    for (std::size_t i = 0; i < rows_; ++i) at(i, k_ + i) = 1.0;
    at(n_, cols_ - 1) = 1.0;
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) basis_[i] = k_ + i;
    // Reduced costs of the phase-1 objective (minimise the artificial sum).
    cost_.assign(cols_, 0.0);
    for (std::size_t j = 0; j < k_; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) s += at(i, j);
      cost_[j] = -s;
    }
    cost_[cols_ - 1] = -1.0;  // minus the objective value
  }

  // Returns the iteration count; throws Indeterminate past the cap.
  int solve() {
    constexpr double kPriceEps = 1e-12;
    constexpr double kPivotEps = 1e-11;
    const int cap = static_cast<int>(50 * (k_ + rows_) + 1000);
    int iter = 0;
    bool bland = false;
    int stalled = 0;
    double last_obj = objective();
    while (true) {
      std::size_t enter = cols_;
      double best = -kPriceEps;
      for (std::size_t j = 0; j < k_; ++j) {
        if (cost_[j] < best) {
          enter = j;
          if (bland) break;
          best = cost_[j];
        }
      }
      if (enter == cols_) return iter;
      if (objective() <= 0.0) return iter;

      std::size_t leave = rows_;
      double ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = at(i, enter);
        if (a <= kPivotEps) continue;
        const double r = at(i, cols_ - 1) / a;
        if (r < ratio - 1e-15 ||
            (r <= ratio + 1e-15 && leave < rows_ && basis_[i] < basis_[leave])) {
          ratio = r;
          leave = i;
        }
      }
      if (leave == rows_) {
        // Unbounded direction cannot occur in a phase-1 problem; treat the
        // column as numerically dead.
        cost_[enter] = 0.0;
        continue;
      }
      pivot(leave, enter);
      if (++iter > cap) {
        throw Indeterminate("hull membership: simplex iteration cap reached");
      }
      const double obj = objective();
      if (obj < last_obj - 1e-15) {
        stalled = 0;
        last_obj = obj;
      } else if (++stalled > static_cast<int>(2 * rows_)) {
        bland = true;
      }
    }
  }

  double objective() const { return -cost_[cols_ - 1]; }

  // Sum of artificial values measured in the original (unscaled) units.
  double residual() const {
    double r = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < k_) continue;
      const std::size_t row = basis_[i] - k_;
      const double v = std::max(0.0, at(i, cols_ - 1));
      r += row < n_ ? v * scale_ : v;
    }
    return r;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * cols_ + j]; }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / at(r, c);
    double* row = &t_[r * cols_];
    for (std::size_t j = 0; j < cols_; ++j) row[j] *= inv;
    row[c] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      double* other = &t_[i * cols_];
      const double f = other[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) other[j] -= f * row[j];
      other[c] = 0.0;
    }
    const double f = cost_[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) cost_[j] -= f * row[j];
      cost_[c] = 0.0;
    }
    basis_[r] = c;
  }

  std::size_t k_, n_, rows_, cols_;
  double scale_ = 1.0;
  std::vector<double> t_;
  std::vector<double> cost_;
  std::vector<std::size_t> basis_;
};

void check_vertices(std::span<const Point> vertices, const Point& p) {
  if (vertices.empty()) throw InvalidArgument("hull of an empty vertex set");
  for (const auto& v : vertices) require_same_space(v, p);
  if (p.is_discrete()) throw InvalidArgument("hull membership needs R^n points");
}

}  // namespace

FeasibilityResult convex_combination_feasibility(std::span<const Point> vertices,
                                                 const Point& p, double tol) {
  check_vertices(vertices, p);
  Phase1 lp(vertices, p);
  FeasibilityResult out;
  out.iterations = lp.solve();
  out.residual = lp.residual();
  out.feasible = out.residual <= tol;
  return out;
}

bool hull_contains(std::span<const Point> vertices, const Point& p,
                   double tol) {
  check_vertices(vertices, p);
  const std::size_t n = p.dim();
  std::vector<double> lo(n, std::numeric_limits<double>::infinity());
  std::vector<double> hi(n, -std::numeric_limits<double>::infinity());
  for (const auto& v : vertices) {
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] < lo[i] - tol || p[i] > hi[i] + tol) return false;
  }
  return convex_combination_feasibility(vertices, p, tol).feasible;
}

ConvexHullIndex::ConvexHullIndex(std::vector<Point> vertices, double tol)
    : vertices_(std::move(vertices)), tol_(tol) {
  if (vertices_.empty()) throw InvalidArgument("hull of an empty vertex set");
  const std::size_t n = vertices_.front().dim();
  lo_.assign(n, std::numeric_limits<double>::infinity());
  hi_.assign(n, -std::numeric_limits<double>::infinity());
  centroid_.assign(n, 0.0);
  for (const auto& v : vertices_) {
    if (v.dim() != n || v.is_discrete()) {
      throw DimensionMismatch("hull vertices must share one continuous space");
    }
    for (std::size_t i = 0; i < n; ++i) {
      lo_[i] = std::min(lo_[i], v[i]);
      hi_[i] = std::max(hi_[i], v[i]);
      centroid_[i] += v[i];
    }
  }
  for (auto& c : centroid_) c /= static_cast<double>(vertices_.size());
  if (n == 2) {
    ring_ = convex_hull_2d(vertices_);
    if (ring_.size() < 3) ring_.clear();
  }
}

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Signed distance of p from the line a->b, positive on the left.
double side(const Point& a, const Point& b, const Point& p) {
  return cross(a, b, p) / std::hypot(b[0] - a[0], b[1] - a[1]);
}

// 1 inside, 0 outside, -1 within `band` of the boundary.
int ring_locate(const std::vector<Point>& r, const Point& p, double band) {
  const std::size_t k = r.size();
  const auto verdict = [band](double d) { return d >= 0.0 ? 1 : (d < -band ? 0 : -1); };
  if (cross(r[0], r[1], p) < 0.0) return verdict(side(r[0], r[1], p));
  if (cross(r[0], r[k - 1], p) > 0.0) return verdict(side(r[k - 1], r[0], p));
  std::size_t lo = 1, hi = k - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (cross(r[0], r[mid], p) >= 0.0 ? lo : hi) = mid;
  }
  return verdict(side(r[lo], r[lo + 1], p));
}

}  // namespace

bool ConvexHullIndex::contains(const Point& p) const {
  if (vertices_.empty()) return false;
  if (p.is_discrete() || p.dim() != dim()) {
    throw DimensionMismatch("hull query in the wrong space");
  }
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] < lo_[i] - tol_ || p[i] > hi_[i] + tol_) return false;
  }
  if (!ring_.empty()) {
    const int where = ring_locate(ring_, p, 4.0 * tol_);
    if (where >= 0) return where == 1;
  }
  // Separation along centroid -> p: if p sticks out beyond every vertex in
  // that direction it is outside.
  std::vector<double> u(n);
  double len2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = p[i] - centroid_[i];
    len2 += u[i] * u[i];
  }
  if (len2 > 0.0) {
    double up = 0.0;
    for (std::size_t i = 0; i < n; ++i) up += u[i] * p[i];
    double vmax = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices_) {
      double uv = 0.0;
      for (std::size_t i = 0; i < n; ++i) uv += u[i] * v[i];
      vmax = std::max(vmax, uv);
    }
    if ((up - vmax) / std::sqrt(len2) > tol_ * std::sqrt(static_cast<double>(n))) {
      return false;
    }
  }
  return convex_combination_feasibility(vertices_, p, tol_).feasible;
}

}  // namespace oodlab
