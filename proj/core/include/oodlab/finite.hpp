#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "oodlab/domain.hpp"
#include "oodlab/hypothesis.hpp"

namespace oodlab {

using Support = std::vector<std::int64_t>;  // sorted element indices

/// Support of a discrete law restricted to `universe` (sorted).
Support support_within(const DistributionSpec& spec, std::span<const std::int64_t> universe);

/// Domains over a finite discrete instance space, with their supports cached.
class FiniteDomainSpace {
 public:
  /// Throws StructuralError if some law puts mass outside the universe,
  /// InvalidArgument for non-discrete laws or an empty universe.
  FiniteDomainSpace(std::vector<std::int64_t> universe, std::vector<Domain> domains);

  const Support& universe() const { return universe_; }
  const std::vector<Domain>& domains() const { return domains_; }
  std::size_t size() const { return domains_.size(); }
  const Support& id_support(std::size_t i) const { return id_[i]; }
  const Support& ood_support(std::size_t i) const { return ood_[i]; }

  /// Every domain has disjoint ID and OOD supports.
  bool dsa() const;

 private:
  Support universe_;
  std::vector<Domain> domains_;
  std::vector<Support> id_, ood_;
};

struct LabeledPoint {
  std::int64_t x = 0;
  int label = 0;  // 1 = inside the ID support
};

/// Answers whether some domain puts x on side i and y on side j of its ID
/// support.
class TwoPointOracle {
 public:
  using Fn = std::function<bool(LabeledPoint, LabeledPoint)>;

  explicit TwoPointOracle(Fn fn) : fn_(std::move(fn)) {}
  /// Enumerates the space on each query.
  static TwoPointOracle brute_force(const FiniteDomainSpace& space);

  bool operator()(LabeledPoint a, LabeledPoint b) const { return fn_(a, b); }

 private:
  Fn fn_;
};

struct MaximalZeroOodResult {
  Hypothesis h;
  bool vacuous = false;  // no domain contains the samples in its ID support
  std::size_t consistent = 0;
};

/// Intersection of the OOD-support complements over every domain whose ID
/// support contains all samples.
MaximalZeroOodResult maximal_zero_ood_fit(const FiniteDomainSpace& space,
                                          std::span<const Point> samples);

struct TreeOrderResult {
  Hypothesis h;
  std::int64_t n_samples = 0;
  std::optional<std::int64_t> pivot;  // the maximal sample outside the reference support
};

/// ceil((1/eps) ln(1/delta)).
std::int64_t tree_order_samples(double eps, double delta);

/// Learner for spaces whose ID supports form a class of VC dimension 1.
/// Orders points by x <= y iff no domain differs from the reference ID support
/// at y while agreeing with it at x, then flips the reference support on the
/// initial segment below the largest sample outside it.
/// Throws StructuralError if the samples outside the reference support are
/// not linearly ordered.
TreeOrderResult tree_order_fit(const FiniteDomainSpace& space, const TwoPointOracle& oracle,
                               const Domain& zero_risk, double eps, double delta,
                               SampleSource& source);

}  // namespace oodlab
