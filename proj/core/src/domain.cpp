#include "oodlab/domain.hpp"

#include <algorithm>
#include <cmath>

#include "oodlab/errors.hpp"

namespace oodlab {

Domain Domain::make(DistributionSpec id, DistributionSpec ood, std::string name,
                    bool dsa) {
  if (id.dim() != ood.dim() || id.space() != ood.space()) {
    throw DimensionMismatch("domain: ID and OOD laws live in different spaces");
  }
  return Domain{std::move(id), std::move(ood), std::move(name), dsa};
}

bool dsa_holds_on(const Domain& d, std::span<const Point> probes) {
  for (const auto& p : probes) {
    if (support_contains(d.id, p) && support_contains(d.ood, p)) return false;
  }
  return true;
}

void LearnerConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw InvalidArgument("epsilon must be in (0, 1/2)");
  }
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidArgument("delta must be in (0, 1/2)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must be in (0, 1)");
}

LabeledSample draw_labeled(const Domain& d, double alpha, Rng& rng) {
  if (uniform01(rng) < alpha) return {sample(d.ood, rng), 0};
  return {sample(d.id, rng), 1};
}

SampleSource::SampleSource(DistributionSpec spec, Rng& rng,
                           std::optional<std::size_t> budget)
    : spec_(std::move(spec)), rng_(&rng), budget_(budget) {}

Point SampleSource::draw() {
  if (budget_ && drawn_ >= *budget_) {
    throw BudgetExceeded("learner asked for more than " + std::to_string(*budget_) +
                         " samples");
  }
  ++drawn_;
  return sample(spec_, *rng_);
}

std::vector<Point> SampleSource::draw(std::size_t count) {
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(draw());
  return out;
}

std::optional<std::size_t> SampleSource::remaining() const {
  if (!budget_) return std::nullopt;
  return *budget_ - std::min(*budget_, drawn_);
}

double mode_iii_epsilon(double epsilon, double alpha) {
  return epsilon * std::min(alpha, 1.0 - alpha);
}

Learner mode_iii_wrap(Learner inner, const LearnerConfig& cfg) {
  cfg.validate();
  Learner out;
  out.name = "mode_iii(" + inner.name + ")";
  out.fit = [inner = std::move(inner)](const LearnerConfig& c, SampleSource& src) {
    LearnerConfig reduced = c;
    reduced.epsilon = mode_iii_epsilon(c.epsilon, c.alpha);
    return inner.fit(reduced, src);
  };
  return out;
}

}  // namespace oodlab
