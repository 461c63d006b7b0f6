#include "oodlab/point.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "oodlab/errors.hpp"

namespace oodlab {

double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

Point::Point(std::initializer_list<double> coords)
    : Point(std::span<const double>(coords.begin(), coords.size())) {}

Point::Point(std::span<const double> coords)
    : dim_(static_cast<std::uint32_t>(coords.size())) {
  for (double c : coords) {
    if (!std::isfinite(c)) {
      throw InvalidArgument("point coordinates must be finite");
    }
  }
  if (coords.size() > kInline) {
    heap_.assign(coords.begin(), coords.end());
  } else {
    std::copy(coords.begin(), coords.end(), inline_.begin());
  }
}

Point Point::discrete(std::int64_t index) {
  if (index < 0) throw InvalidArgument("discrete point index must be >= 0");
  Point p;
  p.dim_ = 1;
  p.kind_ = SpaceKind::kDiscrete;
  p.inline_[0] = static_cast<double>(index);
  return p;
}

Point Point::zeros(std::size_t dim) {
  std::vector<double> z(dim, 0.0);
  return Point(z);
}

std::int64_t Point::index() const {
  if (!is_discrete()) throw InvalidArgument("index() on a continuous point");
  return static_cast<std::int64_t>(inline_[0]);
}

bool operator==(const Point& a, const Point& b) {
  if (a.kind_ != b.kind_ || a.dim_ != b.dim_) return false;
  auto ca = a.coords();
  auto cb = b.coords();
  return std::equal(ca.begin(), ca.end(), cb.begin());
}

std::strong_ordering operator<=>(const Point& a, const Point& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.dim_ != b.dim_) return a.dim_ <=> b.dim_;
  auto ca = a.coords();
  auto cb = b.coords();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] < cb[i]) return std::strong_ordering::less;
    if (ca[i] > cb[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
  if (p.is_discrete()) return os << '#' << p.index();
  os << '(';
  auto c = p.coords();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ", ";
    os << c[i];
  }
  return os << ')';
}

void require_same_space(const Point& a, const Point& b) {
  if (a.kind() != b.kind() || a.dim() != b.dim()) {
    throw DimensionMismatch("points from different spaces (dim " +
                            std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()) + ")");
  }
}

double squared_distance(const Point& a, const Point& b) {
  auto ca = a.coords();
  auto cb = b.coords();
  double s = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const double d = ca[i] - cb[i];
    s += d * d;
  }
  return s;
}

double distance(const Point& a, const Point& b) {
  return std::sqrt(squared_distance(a, b));
}

double norm(const Point& p) {
  double s = 0.0;
  for (double c : p.coords()) s += c * c;
  return std::sqrt(s);
}

}  // namespace oodlab
