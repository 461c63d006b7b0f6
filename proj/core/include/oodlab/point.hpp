#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

namespace oodlab {

/// Per-trial random state. Seeds fully determine a run.
using Rng = std::mt19937_64;

/// Uniform draw from [0, 1).
double uniform01(Rng& rng);

enum class SpaceKind : std::uint8_t { kContinuous, kDiscrete };

/// A point of the instance space: either a coordinate vector in R^n or a
/// non-negative integer index into a discrete space (N or a finite universe).
/// Discrete points report dimension 1 and expose their index as coordinate 0.
///
/// Up to three coordinates are stored inline; sampling loops create millions
/// of points per trial.
class Point {
 public:
  Point() = default;
  Point(std::initializer_list<double> coords);
  explicit Point(std::span<const double> coords);
  explicit Point(const std::vector<double>& coords)
      : Point(std::span<const double>(coords)) {}

  static Point discrete(std::int64_t index);
  static Point zeros(std::size_t dim);

  SpaceKind kind() const { return kind_; }
  bool is_discrete() const { return kind_ == SpaceKind::kDiscrete; }
  std::size_t dim() const { return dim_; }

  std::span<const double> coords() const {
    return {data(), static_cast<std::size_t>(dim_)};
  }
  std::span<double> mutable_coords() {
    return {data(), static_cast<std::size_t>(dim_)};
  }
  double operator[](std::size_t i) const { return data()[i]; }

  /// Index of a discrete point. Throws InvalidArgument on continuous points.
  std::int64_t index() const;

  std::vector<double> to_vector() const {
    return {coords().begin(), coords().end()};
  }

  friend bool operator==(const Point& a, const Point& b);
  friend std::strong_ordering operator<=>(const Point& a, const Point& b);

 private:
  static constexpr std::size_t kInline = 3;

  const double* data() const {
    return dim_ <= kInline ? inline_.data() : heap_.data();
  }
  double* data() { return dim_ <= kInline ? inline_.data() : heap_.data(); }

  std::array<double, kInline> inline_{};
  std::vector<double> heap_;
  std::uint32_t dim_ = 0;
  SpaceKind kind_ = SpaceKind::kContinuous;
};

std::ostream& operator<<(std::ostream& os, const Point& p);

double squared_distance(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);
double norm(const Point& p);

/// Throws DimensionMismatch unless both points live in the same space.
void require_same_space(const Point& a, const Point& b);

}  // namespace oodlab
