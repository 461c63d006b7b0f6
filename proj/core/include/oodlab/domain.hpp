#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oodlab/distributions.hpp"
#include "oodlab/hypothesis.hpp"
#include "oodlab/point.hpp"

namespace oodlab {

/// An (ID, OOD) pair of distributions over one instance space.
struct Domain {
  DistributionSpec id;
  DistributionSpec ood;
  std::string name;
  /// Advertised disjoint supports; see dsa_holds_on.
  bool dsa = false;

  /// Throws DimensionMismatch if the two laws live in different spaces.
  static Domain make(DistributionSpec id, DistributionSpec ood, std::string name = {},
                     bool dsa = false);

  std::size_t dim() const { return id.dim(); }
  SpaceKind space() const { return id.space(); }
};

/// False if some probe lies in both supports.
bool dsa_holds_on(const Domain& d, std::span<const Point> probes);

struct LearnerConfig {
  double epsilon = 0.1;
  double delta = 0.1;
  double alpha = 0.5;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument unless epsilon, delta in (0, 1/2), alpha in (0, 1).
  void validate() const;
};

struct LabeledSample {
  Point point;
  int pseudolabel = 1;  // 1 = ID, 0 = OOD
};

/// Draws from (1 - alpha) D_in + alpha D_out, labelled by the component.
LabeledSample draw_labeled(const Domain& d, double alpha, Rng& rng);

/// The ID oracle a learner sees: draws from one distribution, counts calls
/// and enforces an optional budget (BudgetExceeded past it).
class SampleSource {
 public:
  SampleSource(DistributionSpec spec, Rng& rng,
               std::optional<std::size_t> budget = std::nullopt);

  Point draw();
  std::vector<Point> draw(std::size_t count);

  std::size_t drawn() const { return drawn_; }
  std::optional<std::size_t> budget() const { return budget_; }
  /// Draws left under the budget; nullopt when unlimited.
  std::optional<std::size_t> remaining() const;
  std::size_t dim() const { return spec_.dim(); }
  SpaceKind space() const { return spec_.space(); }

 private:
  DistributionSpec spec_;
  Rng* rng_;
  std::optional<std::size_t> budget_;
  std::size_t drawn_ = 0;
};

/// A learning rule: reads ID samples from the source, returns a hypothesis.
struct Learner {
  std::string name;
  std::function<Hypothesis(const LearnerConfig&, SampleSource&)> fit;
};

/// eps * min(alpha, 1 - alpha).
double mode_iii_epsilon(double epsilon, double alpha);

/// Runs `inner` at the reduced target risk mode_iii_epsilon(eps, alpha), so
/// that both R_in and R_out end up below eps.
Learner mode_iii_wrap(Learner inner, const LearnerConfig& cfg);

}  // namespace oodlab
