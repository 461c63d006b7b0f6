#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "oodlab/domain.hpp"

namespace oodlab {

inline constexpr std::size_t kMaxShatterSize = 20;

/// The (ID support, OOD support) pair of a domain, as sorted point sets.
struct FiniteSupportPair {
  std::vector<Point> id_support;
  std::vector<Point> ood_support;
};

/// Supports of `d` restricted to `universe`.
FiniteSupportPair support_pair(const Domain& d, std::span<const Point> universe);

/// True iff every split (A, S \ A) of S is realized exactly on S by a pair.
/// Throws InvalidArgument when |S| > 20.
bool shatters(std::span<const FiniteSupportPair> space, std::span<const Point> S);
/// Size of the largest shattered subset of `universe`.
std::size_t vc_dimension(std::span<const FiniteSupportPair> space,
                         std::span<const Point> universe);

/// Classical shattering of S by a family of sets.
bool shatters_sets(std::span<const std::vector<Point>> sets, std::span<const Point> S);
std::size_t vc_dimension_sets(std::span<const std::vector<Point>> sets,
                              std::span<const Point> universe);

/// ID and OOD support systems of a space.
std::vector<std::vector<Point>> id_supports(std::span<const FiniteSupportPair> space);
std::vector<std::vector<Point>> ood_supports(std::span<const FiniteSupportPair> space);

}  // namespace oodlab
