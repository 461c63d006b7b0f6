#include <algorithm>
#include <cmath>
#include <memory>

#include "oodlab/errors.hpp"
#include "oodlab/finite.hpp"

namespace oodlab {

namespace {

bool has(const Support& s, std::int64_t x) {
  return std::binary_search(s.begin(), s.end(), x);
}

std::vector<Point> as_points(const Support& s) {
  std::vector<Point> out;
  out.reserve(s.size());
  for (auto x : s) out.push_back(Point::discrete(x));
  return out;
}

}  // namespace

Support support_within(const DistributionSpec& spec, std::span<const std::int64_t> universe) {
  if (spec.space() != SpaceKind::kDiscrete) {
    throw InvalidArgument("finite spaces need discrete laws, got " + spec.type_name());
  }
  Support s;
  for (auto x : universe) {
    if (support_contains(spec, Point::discrete(x))) s.push_back(x);
  }
  return s;
}

FiniteDomainSpace::FiniteDomainSpace(std::vector<std::int64_t> universe,
                                     std::vector<Domain> domains)
    : universe_(std::move(universe)), domains_(std::move(domains)) {
  if (universe_.empty()) throw InvalidArgument("finite space needs a non-empty universe");
  std::sort(universe_.begin(), universe_.end());
  universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
  const Hypothesis all_points = Hypothesis::finite_set(as_points(universe_));
  for (const auto& d : domains_) {
    for (const auto* spec : {&d.id, &d.ood}) {
      const auto inside = region_mass(*spec, all_points);
      if (!inside || std::fabs(*inside - 1.0) > 1e-9) {
        throw StructuralError("domain '" + d.name + "': " + spec->type_name() +
                              " puts mass outside the universe");
      }
    }
    id_.push_back(support_within(d.id, universe_));
    ood_.push_back(support_within(d.ood, universe_));
  }
}

bool FiniteDomainSpace::dsa() const {
  for (std::size_t i = 0; i < size(); ++i) {
    for (auto x : id_[i]) {
      if (has(ood_[i], x)) return false;
    }
  }
  return true;
}

TwoPointOracle TwoPointOracle::brute_force(const FiniteDomainSpace& space) {
  auto supports = std::make_shared<std::vector<Support>>();
  for (std::size_t i = 0; i < space.size(); ++i) supports->push_back(space.id_support(i));
  return TwoPointOracle([supports](LabeledPoint a, LabeledPoint b) {
    for (const auto& s : *supports) {
      if (has(s, a.x) == (a.label == 1) && has(s, b.x) == (b.label == 1)) return true;
    }
    return false;
  });
}

MaximalZeroOodResult maximal_zero_ood_fit(const FiniteDomainSpace& space,
                                          std::span<const Point> samples) {
  std::vector<std::int64_t> xs;
  for (const auto& p : samples) {
    if (!p.is_discrete()) throw DimensionMismatch("finite spaces take discrete samples");
    xs.push_back(p.index());
  }
  MaximalZeroOodResult r;
  std::vector<bool> excluded(space.universe().size(), false);
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto& in = space.id_support(i);
    if (!std::all_of(xs.begin(), xs.end(), [&](auto x) { return has(in, x); })) continue;
    ++r.consistent;
    for (auto y : space.ood_support(i)) {
      const auto it = std::lower_bound(space.universe().begin(), space.universe().end(), y);
      excluded[static_cast<std::size_t>(it - space.universe().begin())] = true;
    }
  }
  if (r.consistent == 0) {
    r.vacuous = true;
    r.h = Hypothesis::all();
    return r;
  }
  Support kept;
  for (std::size_t k = 0; k < excluded.size(); ++k) {
    if (!excluded[k]) kept.push_back(space.universe()[k]);
  }
  r.h = kept.empty() ? Hypothesis::empty() : Hypothesis::finite_set(as_points(kept));
  return r;
}

std::int64_t tree_order_samples(double eps, double delta) {
  if (!(eps > 0.0 && eps < 0.5)) throw InvalidArgument("epsilon must be in (0, 1/2)");
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidArgument("delta must be in (0, 1/2)");
  return static_cast<std::int64_t>(std::ceil(std::log(1.0 / delta) / eps));
}

TreeOrderResult tree_order_fit(const FiniteDomainSpace& space, const TwoPointOracle& oracle,
                               const Domain& zero_risk, double eps, double delta,
                               SampleSource& source) {
  const Support ref = support_within(zero_risk.id, space.universe());
  auto f = [&](std::int64_t x) { return has(ref, x) ? 1 : 0; };
  auto below = [&](std::int64_t x, std::int64_t y) {
    return !oracle({x, f(x)}, {y, 1 - f(y)});
  };

  TreeOrderResult r;
  r.n_samples = tree_order_samples(eps, delta);
  Support differing;
  for (const auto& p : source.draw(static_cast<std::size_t>(r.n_samples))) {
    if (!p.is_discrete()) throw DimensionMismatch("finite spaces take discrete samples");
    if (f(p.index()) == 0) differing.push_back(p.index());
  }
  std::sort(differing.begin(), differing.end());
  differing.erase(std::unique(differing.begin(), differing.end()), differing.end());

  if (differing.empty()) {
    r.h = ref.empty() ? Hypothesis::empty() : Hypothesis::finite_set(as_points(ref));
    return r;
  }
  for (std::size_t a = 0; a < differing.size(); ++a) {
    for (std::size_t b = a + 1; b < differing.size(); ++b) {
      if (!below(differing[a], differing[b]) && !below(differing[b], differing[a])) {
        throw StructuralError("tree order: samples " + std::to_string(differing[a]) +
                              " and " + std::to_string(differing[b]) +
                              " are incomparable");
      }
    }
  }
  std::int64_t s = differing.front();
  for (auto x : differing) {
    if (below(s, x)) s = x;
  }
  r.pivot = s;
  Support h;
  for (auto x : space.universe()) {
    if ((f(x) == 1) != below(x, s)) h.push_back(x);
  }
  r.h = h.empty() ? Hypothesis::empty() : Hypothesis::finite_set(as_points(h));
  return r;
}

}  // namespace oodlab
