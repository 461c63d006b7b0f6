#include "oodlab/vc.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "oodlab/errors.hpp"

namespace oodlab {

namespace {

using Mask = std::uint32_t;

std::vector<Point> sorted_unique(std::span<const Point> pts) {
  std::vector<Point> v(pts.begin(), pts.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<Point> checked_ground(std::span<const Point> pts) {
  auto v = sorted_unique(pts);
  if (v.size() > kMaxShatterSize) {
    throw InvalidArgument("shattering is capped at " + std::to_string(kMaxShatterSize) +
                          " points, got " + std::to_string(v.size()));
  }
  return v;
}

Mask mask_of(const std::vector<Point>& set, const std::vector<Point>& ground) {
  Mask m = 0;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (std::binary_search(set.begin(), set.end(), ground[i])) m |= Mask{1} << i;
  }
  return m;
}

/// Packs the bits of `x` selected by `sel` into the low bits.
Mask compress(Mask x, Mask sel) {
  Mask out = 0;
  int k = 0;
  for (int i = 0; sel; ++i, sel >>= 1) {
    if (sel & 1u) {
      if ((x >> i) & 1u) out |= Mask{1} << k;
      ++k;
    }
  }
  return out;
}

struct PairMask {
  Mask id, ood;
};

bool pair_shatters(const std::vector<PairMask>& space, Mask s) {
  const int k = std::popcount(s);
  std::vector<char> seen(std::size_t{1} << k, 0);
  std::size_t hits = 0;
  for (const auto& p : space) {
    if (((p.id | p.ood) & s) != s || (p.id & p.ood & s) != 0) continue;
    const Mask a = compress(p.id, s);
    if (!seen[a]) {
      seen[a] = 1;
      if (++hits == seen.size()) return true;
    }
  }
  return hits == seen.size();
}

bool set_shatters(const std::vector<Mask>& sets, Mask s) {
  const int k = std::popcount(s);
  std::vector<char> seen(std::size_t{1} << k, 0);
  std::size_t hits = 0;
  for (const auto m : sets) {
    const Mask a = compress(m, s);
    if (!seen[a]) {
      seen[a] = 1;
      if (++hits == seen.size()) return true;
    }
  }
  return hits == seen.size();
}

/// Largest k such that some k-subset of n ground points passes `test`,
/// using that shattering is closed under taking subsets.
template <class Test>
std::size_t largest_passing(std::size_t n, Test test) {
  if (!test(Mask{0})) return 0;
  std::size_t best = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    bool found = false;
    // Gosper's hack over k-subsets.
    Mask s = (Mask{1} << k) - 1;
    const Mask limit = Mask{1} << n;
    while (s < limit) {
      if (test(s)) {
        found = true;
        break;
      }
      const Mask c = s & (~s + 1);
      const Mask r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
    if (!found) break;
    best = k;
  }
  return best;
}

std::vector<PairMask> pair_masks(std::span<const FiniteSupportPair> space,
                                 const std::vector<Point>& ground) {
  std::vector<PairMask> out;
  for (const auto& p : space) {
    out.push_back({mask_of(sorted_unique(p.id_support), ground),
                   mask_of(sorted_unique(p.ood_support), ground)});
  }
  return out;
}

std::vector<Mask> set_masks(std::span<const std::vector<Point>> sets,
                            const std::vector<Point>& ground) {
  std::vector<Mask> out;
  for (const auto& s : sets) out.push_back(mask_of(sorted_unique(s), ground));
  return out;
}

Mask full(std::size_t n) { return n == 32 ? ~Mask{0} : (Mask{1} << n) - 1; }

}  // namespace

FiniteSupportPair support_pair(const Domain& d, std::span<const Point> universe) {
  FiniteSupportPair p;
  for (const auto& x : sorted_unique(universe)) {
    if (support_contains(d.id, x)) p.id_support.push_back(x);
    if (support_contains(d.ood, x)) p.ood_support.push_back(x);
  }
  return p;
}

bool shatters(std::span<const FiniteSupportPair> space, std::span<const Point> S) {
  const auto ground = checked_ground(S);
  return pair_shatters(pair_masks(space, ground), full(ground.size()));
}

std::size_t vc_dimension(std::span<const FiniteSupportPair> space,
                         std::span<const Point> universe) {
  const auto ground = checked_ground(universe);
  const auto masks = pair_masks(space, ground);
  return largest_passing(ground.size(), [&](Mask s) { return pair_shatters(masks, s); });
}

bool shatters_sets(std::span<const std::vector<Point>> sets, std::span<const Point> S) {
  const auto ground = checked_ground(S);
  return set_shatters(set_masks(sets, ground), full(ground.size()));
}

std::size_t vc_dimension_sets(std::span<const std::vector<Point>> sets,
                              std::span<const Point> universe) {
  const auto ground = checked_ground(universe);
  const auto masks = set_masks(sets, ground);
  return largest_passing(ground.size(), [&](Mask s) { return set_shatters(masks, s); });
}

std::vector<std::vector<Point>> id_supports(std::span<const FiniteSupportPair> space) {
  std::vector<std::vector<Point>> out;
  for (const auto& p : space) out.push_back(p.id_support);
  return out;
}

std::vector<std::vector<Point>> ood_supports(std::span<const FiniteSupportPair> space) {
  std::vector<std::vector<Point>> out;
  for (const auto& p : space) out.push_back(p.ood_support);
  return out;
}

}  // namespace oodlab
